#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <string>

#include "rspace/sheaf.hpp"

namespace rspace::detail {

// Builders are referentially transparent and their values immutable, so the
// widely reused spaces are memoized by descriptor.
inline RingedSpace cached_space(const std::string& key,
                                const std::function<RingedSpace()>& build) {
  static std::mutex mutex;
  static std::map<std::string, RingedSpace> cache;
  std::scoped_lock lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build()).first;
  return it->second;
}

}  // namespace rspace::detail
