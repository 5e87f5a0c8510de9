#pragma once

// Parameter grids and row-parallel evaluation.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstddef>
#include <exception>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace surf4 {

/// `count` evenly spaced values from `min` to `max` inclusive; a count of 1
/// is the single value `min`.
struct Range {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  std::vector<double> values() const {
    std::vector<double> out(static_cast<std::size_t>(count));
    if (count == 1) {
      out[0] = min;
      return out;
    }
    for (int i = 0; i < count; ++i) {
      const double t = static_cast<double>(i) / (count - 1);
      out[static_cast<std::size_t>(i)] = i == count - 1 ? max : min + (max - min) * t;
    }
    return out;
  }
};

namespace detail {

inline double parse_real(std::string_view s, std::string_view what) {
  double x = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty())
    throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(s) + "'");
  return x;
}

}  // namespace detail

/// Parses `min:max:count`.
inline Range parse_range(std::string_view text) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (a == std::string_view::npos || b == std::string_view::npos)
    throw std::invalid_argument("range must look like min:max:count, got '" + std::string(text) + "'");
  Range r;
  r.min = detail::parse_real(text.substr(0, a), "range minimum");
  r.max = detail::parse_real(text.substr(a + 1, b - a - 1), "range maximum");
  const std::string_view n = text.substr(b + 1);
  const auto [end, ec] = std::from_chars(n.data(), n.data() + n.size(), r.count);
  if (ec != std::errc() || end != n.data() + n.size() || n.empty())
    throw std::invalid_argument("bad range count '" + std::string(n) + "'");
  if (r.count < 1) throw std::invalid_argument("range count must be at least 1");
  if (r.count > 1 && !(r.max > r.min))
    throw std::invalid_argument("range maximum must exceed minimum when count > 1");
  return r;
}

struct GridSpec {
  Range u{0.5, 2.0, 16};
  Range v{0.0, 6.0, 7};
};

/// Calls fn(i) for i in [0, n) on a pool of threads and returns the results
/// in index order. If any call throws, the exception of the lowest failing
/// index is rethrown after all workers finish.
template <class Fn>
auto parallel_map(std::size_t n, Fn fn, unsigned threads = 0) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<R> results(n);
  std::vector<std::exception_ptr> errors(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace surf4
