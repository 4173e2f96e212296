#include "npr/shading.hpp"

namespace npr {

void validate(const ShaderConfig& shader) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GoochShader>) {
          if (!(s.alpha >= 0.0 && s.alpha <= 1.0 && s.beta >= 0.0 && s.beta <= 1.0))
            throw Error(ErrorCode::InvalidConfig, "gooch alpha and beta must lie in [0, 1]");
        } else if constexpr (std::is_same_v<T, ToonShader>) {
          if (s.levels < 2) throw Error(ErrorCode::InvalidConfig, "toon shading needs at least 2 levels");
        } else if constexpr (std::is_same_v<T, PhongShader>) {
          if (!(s.material.shininess >= 0.0))
            throw Error(ErrorCode::InvalidConfig, "shininess must be non-negative");
        }
      },
      shader);
}

Color shade_phong(const PhongShader& config, const Vec3& n, const Vec3& l, const Vec3& v) {
  const Material& m = config.material;
  Color c = m.ambient.cwiseProduct(config.ambient_light);
  const double ndotl = n.dot(l);
  if (ndotl > 0.0) {
    c += m.diffuse.cwiseProduct(config.light) * ndotl;
    const Vec3 r = -l + 2.0 * ndotl * n;
    const double rv = std::max(r.dot(v), 0.0);
    c += m.specular.cwiseProduct(config.light) * std::pow(rv, m.shininess);
  }
  return clamp01(c);
}

Color shade_gooch(const GoochShader& config, double ndotl) {
  const double t = 0.5 * (1.0 + ndotl);
  const Color cool = config.k_blue + config.alpha * config.kd;
  const Color warm = config.k_yellow + config.beta * config.kd;
  return clamp01(t * warm + (1.0 - t) * cool);
}

Color shade_toon(const ToonShader& config, double ndotl) {
  const double d = std::max(ndotl, 0.0);
  const double q = std::min(std::floor(d * config.levels) / (config.levels - 1), 1.0);
  return clamp01(q * config.base);
}

Color shade(const ShaderConfig& shader, const Vec3& n, const Vec3& v) {
  return std::visit(
      [&](const auto& s) -> Color {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PhongShader>) {
          return shade_phong(s, n, s.light_dir.normalized(), v);
        } else if constexpr (std::is_same_v<T, GoochShader>) {
          return shade_gooch(s, n.dot(s.light_dir.normalized()));
        } else if constexpr (std::is_same_v<T, ToonShader>) {
          return shade_toon(s, n.dot(s.light_dir.normalized()));
        } else if constexpr (std::is_same_v<T, NormalShader>) {
          return clamp01(0.5 * (n + Vec3::Ones()));
        } else {
          return clamp01(s.color);
        }
      },
      shader);
}

}  // namespace npr
