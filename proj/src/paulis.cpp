#include "ycube/paulis.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace ycube {

PauliString::PauliString(BitVec x, BitVec z) : x_(std::move(x)), z_(std::move(z)) {
  if (x_.size() != z_.size()) throw std::invalid_argument("PauliString: X and Z parts differ in length");
}

PauliString PauliString::X(std::size_t nqubits, std::span<const std::uint32_t> edges) {
  PauliString p(nqubits);
  for (auto e : edges) {
    if (e >= nqubits) throw std::out_of_range("PauliString::X: edge out of range");
    p.x_.flip(e);
  }
  return p;
}

PauliString PauliString::Z(std::size_t nqubits, std::span<const std::uint32_t> edges) {
  PauliString p(nqubits);
  for (auto e : edges) {
    if (e >= nqubits) throw std::out_of_range("PauliString::Z: edge out of range");
    p.z_.flip(e);
  }
  return p;
}

std::size_t PauliString::weight() const {
  std::size_t n = 0;
  auto xs = x_.words();
  auto zs = z_.words();
  for (std::size_t w = 0; w < xs.size(); ++w) n += static_cast<std::size_t>(std::popcount(xs[w] | zs[w]));
  return n;
}

std::vector<std::uint32_t> PauliString::support() const {
  BitVec both = x_;
  auto out = both.words();
  auto zs = z_.words();
  for (std::size_t w = 0; w < out.size(); ++w) out[w] |= zs[w];
  return both.ones();
}

PauliString& PauliString::operator*=(const PauliString& other) {
  if (other.size() != size()) throw std::invalid_argument("PauliString: length mismatch");
  x_ ^= other.x_;
  z_ ^= other.z_;
  return *this;
}

std::string PauliString::to_text() const {
  std::ostringstream os;
  bool first = true;
  for (auto e : support()) {
    const bool hx = x_.get(e);
    const bool hz = z_.get(e);
    if (!first) os << ' ';
    first = false;
    os << (hx && hz ? 'Y' : (hx ? 'X' : 'Z')) << '@' << e;
  }
  return os.str();
}

PauliString PauliString::from_text(std::string_view text, std::size_t nqubits) {
  PauliString p(nqubits);
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == ',' || text[pos] == '\n')) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t' && text[end] != ',' && text[end] != '\n') ++end;
    const std::string_view tok = text.substr(pos, end - pos);
    pos = end;

    if (tok.size() < 3 || tok[1] != '@') throw std::invalid_argument("bad Pauli token '" + std::string(tok) + "'");
    std::uint64_t edge = 0;
    const auto* first = tok.data() + 2;
    const auto* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, edge);
    if (ec != std::errc() || ptr != last) throw std::invalid_argument("bad edge index in '" + std::string(tok) + "'");
    if (edge >= nqubits) throw std::out_of_range("edge " + std::to_string(edge) + " out of range");
    switch (tok[0]) {
      case 'X': p.x_.flip(edge); break;
      case 'Z': p.z_.flip(edge); break;
      case 'Y':
        p.x_.flip(edge);
        p.z_.flip(edge);
        break;
      default: throw std::invalid_argument("bad Pauli letter in '" + std::string(tok) + "'");
    }
  }
  return p;
}

PauliString multiply(const PauliString& a, const PauliString& b) { return a * b; }

bool commutes(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) throw std::invalid_argument("commutes: length mismatch");
  return a.x().dot(b.z()) == a.z().dot(b.x());
}

}  // namespace ycube
