#include "polysub/polynomial.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "polysub/error.hpp"

namespace polysub {

namespace {

// Sorts and reduces a literal list. Returns false if it contains both x_i and
// (1 - x_i), i.e. the monomial is identically zero.
bool canonicalize(MonomialKey& key) {
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  for (std::size_t k = 1; k < key.size(); ++k) {
    if (literal_var(key[k]) == literal_var(key[k - 1])) return false;
  }
  return true;
}

// Union of two canonical keys; false when a variable appears with both signs.
bool merge_keys(const MonomialKey& a, const MonomialKey& b, MonomialKey& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const Index va = literal_var(a[i]);
    const Index vb = literal_var(b[j]);
    if (va < vb) {
      out.push_back(a[i++]);
    } else if (vb < va) {
      out.push_back(b[j++]);
    } else {
      if (a[i] != b[j]) return false;
      out.push_back(a[i]);
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
  return true;
}

void require_same_ground(const MultilinearPoly& p, const MultilinearPoly& q) {
  if (p.ground_size() != q.ground_size()) {
    throw InputError("ground-size mismatch: " + std::to_string(p.ground_size()) + " vs " +
                     std::to_string(q.ground_size()));
  }
}

inline double literal_value(LiteralCode code, std::span<const double> y) {
  const double v = y[literal_var(code)];
  return literal_negated(code) ? 1.0 - v : v;
}

}  // namespace

std::size_t MonomialKeyHash::operator()(const MonomialKey& key) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ key.size();
  for (LiteralCode c : key) {
    h ^= c + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

MultilinearPoly MultilinearPoly::constant(std::size_t ground_size, double c) {
  MultilinearPoly p(ground_size);
  p.add_term({}, c);
  return p;
}

MultilinearPoly MultilinearPoly::variable(std::size_t ground_size, Index i, double c) {
  MultilinearPoly p(ground_size);
  p.add_term({positive_literal(i)}, c);
  return p;
}

MultilinearPoly MultilinearPoly::complement(std::size_t ground_size, Index i, double c) {
  MultilinearPoly p(ground_size);
  p.add_term({complement_literal(i)}, c);
  return p;
}

MultilinearPoly MultilinearPoly::from_monomials(std::size_t ground_size,
                                                std::span<const Monomial> monomials) {
  MultilinearPoly p(ground_size);
  for (const auto& m : monomials) p.add_term(m.literals, m.coefficient);
  return p;
}

void MultilinearPoly::add_term(MonomialKey literals, double c) {
  for (LiteralCode code : literals) {
    if (literal_var(code) >= ground_size_) {
      throw InputError("variable index " + std::to_string(literal_var(code)) +
                       " out of range for ground size " + std::to_string(ground_size_));
    }
  }
  if (!std::isfinite(c)) throw InputError("non-finite coefficient");
  if (c == 0.0 || !canonicalize(literals)) return;
  auto [it, inserted] = terms_.try_emplace(std::move(literals), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

void MultilinearPoly::add_positive_term(std::span<const Index> vars, double c) {
  MonomialKey key;
  key.reserve(vars.size());
  for (Index i : vars) key.push_back(positive_literal(i));
  add_term(std::move(key), c);
}

void MultilinearPoly::accumulate(MonomialKey key, double c) {
  auto [it, inserted] = terms_.try_emplace(std::move(key), c);
  if (!inserted) it->second += c;
}

void MultilinearPoly::drop_small(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) {
    return kv.second == 0.0 || std::abs(kv.second) < tol;
  });
}

std::size_t MultilinearPoly::degree() const noexcept {
  std::size_t d = 0;
  for (const auto& [key, c] : terms_) d = std::max(d, key.size());
  return d;
}

std::size_t MultilinearPoly::literal_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [key, c] : terms_) n += key.size();
  return n;
}

bool MultilinearPoly::has_complemented_literals() const noexcept {
  for (const auto& [key, c] : terms_) {
    for (LiteralCode code : key) {
      if (literal_negated(code)) return true;
    }
  }
  return false;
}

double MultilinearPoly::coefficient(const MonomialKey& literals) const {
  auto it = terms_.find(literals);
  return it == terms_.end() ? 0.0 : it->second;
}

std::vector<Monomial> MultilinearPoly::sorted_terms() const {
  std::vector<Monomial> out;
  out.reserve(terms_.size());
  for (const auto& [key, c] : terms_) out.push_back(Monomial{c, key});
  std::sort(out.begin(), out.end(),
            [](const Monomial& a, const Monomial& b) { return a.literals < b.literals; });
  return out;
}

std::string MultilinearPoly::to_text() const {
  std::string out = "N=" + std::to_string(ground_size_) + "\n";
  char buf[64];
  for (const auto& m : sorted_terms()) {
    auto res = std::to_chars(buf, buf + sizeof buf, m.coefficient);
    out.append(buf, res.ptr);
    for (LiteralCode code : m.literals) {
      out.push_back(' ');
      if (literal_negated(code)) out.push_back('~');
      out += std::to_string(literal_var(code));
    }
    out.push_back('\n');
  }
  return out;
}

MultilinearPoly MultilinearPoly::from_text(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  MultilinearPoly p;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }

    std::vector<std::string_view> tokens;
    std::size_t t = 0;
    while (t < line.size()) {
      while (t < line.size() && (line[t] == ' ' || line[t] == '\t')) ++t;
      std::size_t s = t;
      while (t < line.size() && line[t] != ' ' && line[t] != '\t') ++t;
      if (t > s) tokens.push_back(line.substr(s, t - s));
    }

    if (!have_header) {
      if (tokens.size() != 1 || tokens[0].substr(0, 2) != "N=") {
        throw ParseError("expected header `N=<ground_size>`", line_no);
      }
      std::size_t n = 0;
      auto sv = tokens[0].substr(2);
      auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), n);
      if (ec != std::errc{} || ptr != sv.data() + sv.size()) {
        throw ParseError("bad ground size", line_no);
      }
      p = MultilinearPoly(n);
      have_header = true;
      continue;
    }

    double c = 0.0;
    auto [cptr, cec] = std::from_chars(tokens[0].data(), tokens[0].data() + tokens[0].size(), c);
    if (cec != std::errc{} || cptr != tokens[0].data() + tokens[0].size()) {
      throw ParseError("bad coefficient `" + std::string(tokens[0]) + "`", line_no);
    }
    MonomialKey key;
    Index prev = 0;
    for (std::size_t k = 1; k < tokens.size(); ++k) {
      std::string_view tok = tokens[k];
      const bool neg = !tok.empty() && tok.front() == '~';
      if (neg) tok.remove_prefix(1);
      Index var = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), var);
      if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError("bad variable index `" + std::string(tokens[k]) + "`", line_no);
      }
      if (var >= p.ground_size()) throw ParseError("variable index out of range", line_no);
      if (k > 1 && var <= prev) throw ParseError("indices must be strictly ascending", line_no);
      prev = var;
      key.push_back(neg ? complement_literal(var) : positive_literal(var));
    }
    if (p.terms_.count(key) != 0) throw ParseError("duplicate monomial", line_no);
    p.add_term(std::move(key), c);
  }
  if (!have_header) throw ParseError("missing header", line_no == 0 ? 1 : line_no);
  return p;
}

MultilinearPoly add(const MultilinearPoly& p, const MultilinearPoly& q, ArithOptions opts) {
  require_same_ground(p, q);
  MultilinearPoly out = p;
  for (const auto& [key, c] : q.terms_) out.accumulate(key, c);
  out.drop_small(opts.drop_tolerance);
  return out;
}

MultilinearPoly scale(const MultilinearPoly& p, double a, ArithOptions opts) {
  MultilinearPoly out(p.ground_size());
  if (a == 0.0) return out;
  out.terms_.reserve(p.terms_.size());
  for (const auto& [key, c] : p.terms_) out.terms_.emplace(key, a * c);
  out.drop_small(opts.drop_tolerance);
  return out;
}

MultilinearPoly multiply(const MultilinearPoly& p, const MultilinearPoly& q, ArithOptions opts) {
  require_same_ground(p, q);
  MultilinearPoly out(p.ground_size());
  out.terms_.reserve(p.terms_.size() * q.terms_.size() / 2 + 1);
  MonomialKey merged;
  for (const auto& [ka, ca] : p.terms_) {
    for (const auto& [kb, cb] : q.terms_) {
      if (!merge_keys(ka, kb, merged)) continue;
      out.accumulate(merged, ca * cb);
    }
  }
  out.drop_small(opts.drop_tolerance);
  return out;
}

MultilinearPoly power(const MultilinearPoly& p, unsigned exponent, ArithOptions opts) {
  MultilinearPoly result = MultilinearPoly::constant(p.ground_size(), 1.0);
  MultilinearPoly base = p;
  while (exponent > 0) {
    if (exponent & 1U) result = multiply(result, base, opts);
    exponent >>= 1U;
    if (exponent > 0) base = multiply(base, base, opts);
  }
  return result;
}

MultilinearPoly pin(const MultilinearPoly& p, Index i, int b) {
  if (i >= p.ground_size()) {
    throw InputError("pin index " + std::to_string(i) + " out of range");
  }
  if (b != 0 && b != 1) throw InputError("pin value must be 0 or 1");
  // The literal that evaluates to 1 under x_i = b disappears; the other kills the term.
  const LiteralCode unit = b == 1 ? positive_literal(i) : complement_literal(i);
  MultilinearPoly out(p.ground_size());
  for (const auto& [key, c] : p.terms_) {
    auto it = std::find_if(key.begin(), key.end(),
                           [i](LiteralCode code) { return literal_var(code) == i; });
    if (it == key.end()) {
      out.accumulate(key, c);
    } else if (*it == unit) {
      MonomialKey reduced = key;
      reduced.erase(reduced.begin() + (it - key.begin()));
      out.accumulate(std::move(reduced), c);
    }
  }
  out.drop_small(0.0);
  return out;
}

MultilinearPoly prune(const MultilinearPoly& p, double tol) {
  MultilinearPoly out = p;
  out.drop_small(tol);
  return out;
}

MultilinearPoly to_positive_form(const MultilinearPoly& p, ArithOptions opts) {
  const std::size_t n = p.ground_size();
  MultilinearPoly out(n);
  for (const auto& m : p.sorted_terms()) {
    MultilinearPoly term = MultilinearPoly::constant(n, m.coefficient);
    for (LiteralCode code : m.literals) {
      MultilinearPoly factor = MultilinearPoly::variable(n, literal_var(code));
      if (literal_negated(code)) {
        factor = add(MultilinearPoly::constant(n, 1.0), scale(factor, -1.0, opts), opts);
      }
      term = multiply(term, factor, opts);
    }
    out = add(out, term, opts);
  }
  return out;
}

void check_unit_box(std::span<const double> y, std::size_t ground_size) {
  if (y.size() != ground_size) {
    throw InputError("point has length " + std::to_string(y.size()) + ", expected " +
                     std::to_string(ground_size));
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] >= -1e-9 && y[i] <= 1.0 + 1e-9)) {
      throw InputError("coordinate " + std::to_string(i) + " outside [0,1]");
    }
  }
}

double evaluate(const MultilinearPoly& p, std::span<const double> y) {
  check_unit_box(y, p.ground_size());
  double sum = 0.0;
  for (const auto& [key, c] : p.terms()) {
    double prod = c;
    for (LiteralCode code : key) prod *= literal_value(code, y);
    sum += prod;
  }
  return sum;
}

double grad_coord(const MultilinearPoly& p, std::span<const double> y, Index i) {
  check_unit_box(y, p.ground_size());
  if (i >= p.ground_size()) throw InputError("coordinate index out of range");
  double sum = 0.0;
  for (const auto& [key, c] : p.terms()) {
    double prod = c;
    bool touches = false;
    for (LiteralCode code : key) {
      if (literal_var(code) == i) {
        touches = true;
        if (literal_negated(code)) prod = -prod;
      } else {
        prod *= literal_value(code, y);
      }
    }
    if (touches) sum += prod;
  }
  return sum;
}

std::vector<double> gradient(const MultilinearPoly& p, std::span<const double> y) {
  check_unit_box(y, p.ground_size());
  std::vector<double> g(p.ground_size(), 0.0);
  for (const auto& [key, c] : p.terms()) {
    for (std::size_t k = 0; k < key.size(); ++k) {
      double prod = literal_negated(key[k]) ? -c : c;
      for (std::size_t m = 0; m < key.size(); ++m) {
        if (m != k) prod *= literal_value(key[m], y);
      }
      g[literal_var(key[k])] += prod;
    }
  }
  return g;
}

}  // namespace polysub
