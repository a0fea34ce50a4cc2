#include "tcm/quarter.hpp"

#include <cctype>

#include "tcm/errors.hpp"

namespace tcm {

Quarter::Quarter(int year, int q) {
  if (q < 1 || q > 4) throw DataError("quarter must be in 1..4, got " + std::to_string(q));
  idx_ = static_cast<std::int64_t>(year) * 4 + (q - 1);
}

bool Quarter::try_parse(const std::string& text, Quarter& out) {
  // YYYYQn with an optional '-' or ' ' before the Q.
  std::size_t i = 0;
  if (text.size() < 6) return false;
  int year = 0;
  for (; i < 4; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    year = year * 10 + (text[i] - '0');
  }
  if (text[i] == '-' || text[i] == ' ') ++i;
  if (i >= text.size() || (text[i] != 'Q' && text[i] != 'q')) return false;
  ++i;
  if (i + 1 != text.size() || text[i] < '1' || text[i] > '4') return false;
  out = Quarter(year, text[i] - '0');
  return true;
}

Quarter Quarter::parse(const std::string& text) {
  Quarter out;
  if (!try_parse(text, out)) throw DataError("cannot parse quarter from '" + text + "'");
  return out;
}

std::string Quarter::str() const {
  return std::to_string(year()) + "Q" + std::to_string(q());
}

Quarter Quarter::operator+(int n) const {
  Quarter r = *this;
  r.idx_ += n;
  return r;
}

Quarter Quarter::operator-(int n) const { return *this + (-n); }

std::vector<Quarter> QuarterRange::dates() const {
  std::vector<Quarter> out;
  out.reserve(static_cast<std::size_t>(size() > 0 ? size() : 0));
  for (Quarter d = start; d <= end; ++d) out.push_back(d);
  return out;
}

}  // namespace tcm
