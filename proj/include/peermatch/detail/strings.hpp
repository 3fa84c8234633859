#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

namespace peermatch::detail {

inline std::string trim(std::string_view s) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

/// Trimmed, case-folded form used for case-insensitive lookups.
inline std::string fold(std::string_view s) { return to_lower(trim(s)); }

/// Fold that also drops spaces, hyphens and underscores ("Less than secondary"
/// and "less-than-secondary" collapse to the same key).
inline std::string fold_compact(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '-' || c == '_') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

inline std::vector<std::string> split(std::string_view s, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(delim, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      break;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

/// Split on `delim`, trim each piece, drop empty pieces.
inline std::vector<std::string> split_trimmed(std::string_view s, char delim) {
  std::vector<std::string> out;
  for (auto& piece : split(s, delim)) {
    std::string t = trim(piece);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

/// `;`-separated name-list cell, deduplicated case-insensitively; the first
/// spelling of each name wins.
inline std::vector<std::string> parse_name_list(std::string_view cell) {
  std::vector<std::string> out;
  std::vector<std::string> seen;
  for (auto& item : split_trimmed(cell, ';')) {
    std::string key = fold(item);
    if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
      seen.push_back(std::move(key));
      out.push_back(std::move(item));
    }
  }
  return out;
}

inline std::string join(const std::vector<std::string>& items, char delim) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out.push_back(delim);
    out += items[i];
  }
  return out;
}

inline bool parse_u64(std::string_view s, unsigned long long& out) {
  std::string t = trim(s);
  if (t.empty()) return false;
  out = 0;
  for (char c : t) {
    if (c < '0' || c > '9') return false;
    unsigned long long digit = static_cast<unsigned long long>(c - '0');
    if (out > (0xFFFFFFFFFFFFFFFFull - digit) / 10) return false;
    out = out * 10 + digit;
  }
  return true;
}

inline bool parse_int(std::string_view s, int& out) {
  std::string t = trim(s);
  if (t.empty()) return false;
  bool neg = false;
  std::size_t i = 0;
  if (t[0] == '+' || t[0] == '-') {
    neg = t[0] == '-';
    i = 1;
    if (t.size() == 1) return false;
  }
  long long v = 0;
  for (; i < t.size(); ++i) {
    if (t[i] < '0' || t[i] > '9') return false;
    v = v * 10 + (t[i] - '0');
    if (v > 1000000000LL) return false;
  }
  out = static_cast<int>(neg ? -v : v);
  return true;
}

inline bool parse_double(std::string_view s, double& out) {
  std::string t = trim(s);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

/// Fixed-point formatting, e.g. format_fixed(0.3, 6) -> "0.300000".
inline std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

/// Shortest representation that round-trips a double.
inline std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double back = std::strtod(buf, nullptr);
  if (back == v) {
    for (int prec = 1; prec < 17; ++prec) {
      char shorter[64];
      std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
      if (std::strtod(shorter, nullptr) == v) return shorter;
    }
  }
  return buf;
}

/// Round half away from zero at `decimals` places; used only for display.
inline double round_half_up(double v, int decimals) {
  double scale = 1.0;
  for (int i = 0; i < decimals; ++i) scale *= 10.0;
  double scaled = v * scale;
  double rounded = scaled >= 0 ? std::floor(scaled + 0.5) : std::ceil(scaled - 0.5);
  return rounded / scale;
}

}  // namespace peermatch::detail
