#include <algorithm>
#include <cctype>

#include "npr/io.hpp"

namespace npr {

LoaderRegistry LoaderRegistry::with_defaults() {
  LoaderRegistry r;
  r.add(".obj", std::make_unique<ObjLoader>());
  r.add(".md2", std::make_unique<Md2Loader>());
  r.add(".zskin", std::make_unique<SkinLoader>());
  return r;
}

namespace {
std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}
}  // namespace

void LoaderRegistry::add(const std::string& extension, std::unique_ptr<SurfaceLoader> loader) {
  const std::string ext = lower(extension);
  if (loaders_.count(ext))
    throw Error(ErrorCode::DuplicateName, "extension '" + ext + "' already has a loader");
  loaders_.emplace(ext, std::move(loader));
}

const SurfaceLoader& LoaderRegistry::for_path(const std::filesystem::path& path) const {
  const std::string ext = lower(path.extension().string());
  auto it = loaders_.find(ext);
  if (it == loaders_.end())
    throw Error(ErrorCode::NoLoader, "no loader for extension '" + ext + "'");
  return *it->second;
}

std::vector<std::string> LoaderRegistry::extensions() const {
  std::vector<std::string> out;
  for (const auto& [ext, loader] : loaders_) out.push_back(ext);
  return out;
}

}  // namespace npr
