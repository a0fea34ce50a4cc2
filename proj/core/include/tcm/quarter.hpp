#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace tcm {

// Calendar quarter, stored as a flat index (year*4 + quarter-1) so that
// differences count quarters directly.
class Quarter {
 public:
  Quarter() = default;
  Quarter(int year, int q);

  static Quarter parse(const std::string& text);  // "1984Q1", "1984q1", "1984-Q1"
  static bool try_parse(const std::string& text, Quarter& out);

  int year() const { return idx_ >= 0 ? idx_ / 4 : (idx_ - 3) / 4; }
  int q() const { return ((idx_ % 4) + 4) % 4 + 1; }
  std::int64_t index() const { return idx_; }

  std::string str() const;

  Quarter operator+(int n) const;
  Quarter operator-(int n) const;
  std::int64_t operator-(const Quarter& other) const { return idx_ - other.idx_; }
  Quarter& operator++() { ++idx_; return *this; }

  auto operator<=>(const Quarter&) const = default;

 private:
  std::int64_t idx_ = 0;
};

// Inclusive range [start, end].
struct QuarterRange {
  Quarter start;
  Quarter end;

  std::int64_t size() const { return end - start + 1; }
  bool contains(const Quarter& d) const { return start <= d && d <= end; }
  std::vector<Quarter> dates() const;
};

}  // namespace tcm
