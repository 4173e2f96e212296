#pragma once

#include <variant>

#include "npr/mesh.hpp"

namespace npr {

/// Light directions point from the surface towards the light and are
/// normalized on use.
struct PhongShader {
  Material material;
  Vec3 light_dir{0.3, 0.5, 1.0};
  Color light{1.0, 1.0, 1.0};
  Color ambient_light{1.0, 1.0, 1.0};
};

/// Cool-to-warm shading.
struct GoochShader {
  Color kd{0.8, 0.8, 0.8};
  Color k_blue{0.0, 0.0, 0.4};
  Color k_yellow{0.4, 0.4, 0.0};
  double alpha = 0.2;
  double beta = 0.6;
  Vec3 light_dir{0.3, 0.5, 1.0};
};

struct ToonShader {
  int levels = 3;
  Color base{0.8, 0.8, 0.8};
  Vec3 light_dir{0.3, 0.5, 1.0};
};

/// Encodes the unit normal as (n + 1) / 2.
struct NormalShader {};

struct FlatShader {
  Color color{0.5, 0.5, 0.5};
};

using ShaderConfig = std::variant<PhongShader, GoochShader, ToonShader, NormalShader, FlatShader>;

/// Throws InvalidConfig for out-of-range parameters.
void validate(const ShaderConfig& shader);

Color shade_phong(const PhongShader& config, const Vec3& n, const Vec3& l, const Vec3& v);
Color shade_gooch(const GoochShader& config, double ndotl);
Color shade_toon(const ToonShader& config, double ndotl);

/// Evaluates any shader for a unit normal and unit direction towards the viewer.
Color shade(const ShaderConfig& shader, const Vec3& n, const Vec3& v);

}  // namespace npr
