#include "cubic/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <sstream>
#include <unordered_map>

#include "cubic/errors.hpp"

namespace cubic {
namespace {

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t lo = 0, hi = 0;
    std::memcpy(&lo, m.e.data(), 8);
    std::memcpy(&hi, m.e.data() + 8, 8);
    return static_cast<std::size_t>(lo * 0x9E3779B97F4A7C15ULL ^ (hi + 0x632BE59BD9B4E019ULL + (lo << 6)));
  }
};

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    const unsigned s = unsigned{a.e[i]} + b.e[i];
    if (s > 255) throw OverflowError("monomial exponent exceeds 255");
    r.e[i] = static_cast<std::uint8_t>(s);
  }
  return r;
}

std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (a.e[i] < b.e[i]) return std::nullopt;
    r.e[i] = static_cast<std::uint8_t>(a.e[i] - b.e[i]);
  }
  return r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    const std::int64_t q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  return t < 0 ? t + p : t;
}

}  // namespace

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const auto x : e) d += x;
  return d;
}

bool grlex_greater(const Monomial& a, const Monomial& b) {
  const auto da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return a.e > b.e;
}

PolyRing::PolyRing() : vars_(std::make_shared<const std::vector<std::string>>()) {}

PolyRing::PolyRing(std::vector<std::string> variables, std::uint64_t coeff_modulus)
    : modulus_(coeff_modulus) {
  if (variables.size() > kMaxVariables) {
    throw InputError("at most " + std::to_string(kMaxVariables) + " polynomial variables are supported");
  }
  if (modulus_ != 0 && (!is_prime(modulus_) || modulus_ > (std::uint64_t{1} << 31))) {
    throw InputError("polynomial coefficient modulus must be a prime below 2^31");
  }
  for (std::size_t i = 0; i < variables.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (variables[i] == variables[j]) throw InputError("duplicate variable name " + variables[i]);
    }
  }
  vars_ = std::make_shared<const std::vector<std::string>>(std::move(variables));
}

std::optional<std::size_t> PolyRing::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    if ((*vars_)[i] == name) return i;
  }
  return std::nullopt;
}

std::string PolyRing::tag() const {
  std::string out = modulus_ == 0 ? "Z[" : "F_" + std::to_string(modulus_) + "[";
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    if (i) out += ',';
    out += (*vars_)[i];
  }
  return out + "]";
}

std::int64_t PolyRing::norm(std::int64_t c) const {
  if (modulus_ == 0) return c;
  const auto p = static_cast<std::int64_t>(modulus_);
  c %= p;
  return c < 0 ? c + p : c;
}

std::int64_t PolyRing::cadd(std::int64_t a, std::int64_t b) const {
  if (modulus_ != 0) return norm(a + b);
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer coefficient overflow");
  return r;
}

std::int64_t PolyRing::cmul(std::int64_t a, std::int64_t b) const {
  if (modulus_ != 0) {
    // Residues are normalized to [0, p) with p < 2^32, so the product fits.
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b) % modulus_);
  }
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer coefficient overflow");
  return r;
}

void PolyRing::check_budget(std::size_t terms) const {
  if (term_budget_ != 0 && terms > term_budget_) {
    throw ResourceError("polynomial term budget of " + std::to_string(term_budget_) + " exceeded");
  }
}

MultiPoly PolyRing::from_int(std::int64_t n) const {
  MultiPoly f;
  const std::int64_t c = norm(n);
  if (c != 0) f.terms_.push_back(Term{Monomial{}, c});
  return f;
}

MultiPoly PolyRing::variable(std::size_t index) const {
  if (index >= vars_->size()) throw InputError("variable index out of range");
  Monomial m;
  m.e[index] = 1;
  return monomial(m, 1);
}

MultiPoly PolyRing::variable(std::string_view name) const {
  const auto idx = variable_index(name);
  if (!idx) throw InputError("unknown variable " + std::string(name));
  return variable(*idx);
}

MultiPoly PolyRing::monomial(const Monomial& mono, std::int64_t coeff) const {
  for (std::size_t i = vars_->size(); i < kMaxVariables; ++i) {
    if (mono.e[i] != 0) throw InputError("monomial uses a variable outside the ring");
  }
  MultiPoly f;
  const std::int64_t c = norm(coeff);
  if (c != 0) f.terms_.push_back(Term{mono, c});
  return f;
}

MultiPoly PolyRing::from_terms(std::vector<Term> terms) const {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_greater(a.mono, b.mono); });
  MultiPoly f;
  for (auto& t : terms) {
    const std::int64_t c = norm(t.coeff);
    if (!f.terms_.empty() && f.terms_.back().mono == t.mono) {
      f.terms_.back().coeff = cadd(f.terms_.back().coeff, c);
    } else {
      f.terms_.push_back(Term{t.mono, c});
    }
  }
  std::erase_if(f.terms_, [](const Term& t) { return t.coeff == 0; });
  return f;
}

MultiPoly PolyRing::add(const MultiPoly& a, const MultiPoly& b) const {
  MultiPoly r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() || (i < a.terms_.size() && grlex_greater(a.terms_[i].mono, b.terms_[j].mono))) {
      r.terms_.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || grlex_greater(b.terms_[j].mono, a.terms_[i].mono)) {
      r.terms_.push_back(b.terms_[j++]);
    } else {
      const std::int64_t c = cadd(a.terms_[i].coeff, b.terms_[j].coeff);
      if (c != 0) r.terms_.push_back(Term{a.terms_[i].mono, c});
      ++i;
      ++j;
    }
  }
  check_budget(r.terms_.size());
  return r;
}

MultiPoly PolyRing::neg(const MultiPoly& a) const { return scale(a, -1); }

MultiPoly PolyRing::sub(const MultiPoly& a, const MultiPoly& b) const { return add(a, neg(b)); }

MultiPoly PolyRing::scale(const MultiPoly& a, std::int64_t c) const {
  c = norm(c);
  MultiPoly r;
  if (c == 0) return r;
  r.terms_.reserve(a.terms_.size());
  for (const auto& t : a.terms_) {
    const std::int64_t v = cmul(t.coeff, c);
    if (v != 0) r.terms_.push_back(Term{t.mono, v});
  }
  return r;
}

MultiPoly PolyRing::mul(const MultiPoly& a, const MultiPoly& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    // Multiplying by a single term preserves the order.
    const bool a_single = a.terms_.size() == 1;
    const Term& t = a_single ? a.terms_[0] : b.terms_[0];
    const MultiPoly& other = a_single ? b : a;
    MultiPoly r;
    r.terms_.reserve(other.terms_.size());
    for (const auto& u : other.terms_) {
      const std::int64_t c = cmul(t.coeff, u.coeff);
      if (c != 0) r.terms_.push_back(Term{mono_mul(t.mono, u.mono), c});
    }
    return r;
  }
  std::unordered_map<Monomial, std::int64_t, MonomialHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      auto& slot = acc[mono_mul(s.mono, t.mono)];
      slot = cadd(slot, cmul(s.coeff, t.coeff));
    }
  }
  MultiPoly r;
  r.terms_.reserve(acc.size());
  for (const auto& [mono, c] : acc) {
    if (c != 0) r.terms_.push_back(Term{mono, c});
  }
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const Term& x, const Term& y) { return grlex_greater(x.mono, y.mono); });
  check_budget(r.terms_.size());
  return r;
}

MultiPoly PolyRing::pow(const MultiPoly& a, std::uint32_t e) const {
  MultiPoly result = one();
  MultiPoly base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    e >>= 1U;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

std::optional<MultiPoly> PolyRing::divide_exact(const MultiPoly& a, const MultiPoly& b) const {
  if (b.is_zero()) {
    if (a.is_zero()) return zero();
    return std::nullopt;
  }
  const Term& lead = b.terms_.front();
  std::vector<Term> quotient;
  MultiPoly rem = a;
  while (!rem.is_zero()) {
    const Term& top = rem.terms_.front();
    const auto mono = mono_div(top.mono, lead.mono);
    if (!mono) return std::nullopt;
    std::int64_t c;
    if (modulus_ == 0) {
      if (top.coeff % lead.coeff != 0) return std::nullopt;
      c = top.coeff / lead.coeff;
    } else {
      c = cmul(top.coeff, inv_mod(lead.coeff, static_cast<std::int64_t>(modulus_)));
    }
    quotient.push_back(Term{*mono, c});
    MultiPoly step;
    step.terms_.push_back(Term{*mono, c});
    rem = sub(rem, mul(step, b));
  }
  MultiPoly q;
  q.terms_ = std::move(quotient);  // generated in descending order
  return q;
}

MultiPoly PolyRing::convert(const PolyRing& source, const MultiPoly& f) const {
  if (source.nvars() != nvars()) throw InputError("polynomial rings have different variable counts");
  if (source.modulus_ != 0 && source.modulus_ != modulus_) {
    throw InputError("cannot convert between coefficient rings " + source.tag() + " and " + tag());
  }
  std::vector<Term> terms(f.terms_.begin(), f.terms_.end());
  return from_terms(std::move(terms));
}

std::string PolyRing::to_string(const MultiPoly& f) const {
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : f.terms_) {
    std::int64_t c = t.coeff;
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (c < 0) c = -c;
    const bool constant = t.mono.degree() == 0;
    bool need_star = false;
    if (c != 1 || constant) {
      out << c;
      need_star = true;
    }
    for (std::size_t i = 0; i < vars_->size(); ++i) {
      if (t.mono.e[i] == 0) continue;
      if (need_star) out << '*';
      out << (*vars_)[i];
      if (t.mono.e[i] > 1) out << '^' << unsigned{t.mono.e[i]};
      need_star = true;
    }
  }
  return out.str();
}

namespace {

class PolyParser {
 public:
  PolyParser(const PolyRing& ring, std::string_view text) : ring_(ring), text_(text) {}

  MultiPoly parse() {
    MultiPoly f = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("cannot parse polynomial \"" + std::string(text_) + "\": " + why + " at offset " +
                     std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly f = term();
    while (true) {
      if (accept('+')) {
        f = ring_.add(f, term());
      } else if (accept('-')) {
        f = ring_.sub(f, term());
      } else {
        return f;
      }
    }
  }

  MultiPoly term() {
    bool negate = false;
    while (true) {
      if (accept('-')) {
        negate = !negate;
      } else if (!accept('+')) {
        break;
      }
    }
    MultiPoly f = factor();
    while (accept('*')) f = ring_.mul(f, factor());
    return negate ? ring_.neg(f) : f;
  }

  MultiPoly factor() {
    MultiPoly base = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      const auto e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 255) fail("exponent too large");
      base = ring_.pow(base, static_cast<std::uint32_t>(e));
    }
    return base;
  }

  MultiPoly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly f = expr();
      if (!accept(')')) fail("expected ')'");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return ring_.from_int(std::stoll(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const auto name = text_.substr(start, pos_ - start);
      if (!ring_.variable_index(name)) fail("unknown variable " + std::string(name));
      return ring_.variable(name);
    }
    fail("unexpected character");
  }

  const PolyRing& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly PolyRing::parse(std::string_view text) const { return PolyParser(*this, text).parse(); }

GfElement poly_specialize(const PolyRing& ring, const MultiPoly& f, const GaloisField& field,
                          std::span<const GfElement> values) {
  if (values.size() < ring.nvars()) throw InputError("assignment does not cover every variable");
  if (ring.coeff_modulus() != 0 && ring.coeff_modulus() != field.characteristic()) {
    throw InputError("coefficient ring " + ring.tag() + " does not embed in " + field.tag());
  }
  // Power tables up to the largest exponent used per variable.
  std::vector<std::vector<GfElement>> powers(ring.nvars());
  for (const auto& t : f.terms()) {
    for (std::size_t v = 0; v < ring.nvars(); ++v) {
      auto& table = powers[v];
      if (table.empty()) table.push_back(field.one());
      while (table.size() <= t.mono.e[v]) table.push_back(field.mul(table.back(), values[v]));
    }
  }
  GfElement acc = field.zero();
  for (const auto& t : f.terms()) {
    GfElement term = field.from_int(t.coeff);
    for (std::size_t v = 0; v < ring.nvars() && !field.is_zero(term); ++v) {
      if (t.mono.e[v] != 0) term = field.mul(term, powers[v][t.mono.e[v]]);
    }
    acc = field.add(acc, term);
  }
  return acc;
}

GfElement poly_specialize(const PolyRing& ring, const MultiPoly& f, const GaloisField& field,
                          const std::map<std::string, GfElement>& assignment) {
  std::vector<GfElement> values;
  values.reserve(ring.nvars());
  for (const auto& name : ring.variables()) {
    const auto it = assignment.find(name);
    if (it == assignment.end()) {
      // Variables absent from f may be left unassigned.
      bool used = false;
      const std::size_t idx = *ring.variable_index(name);
      for (const auto& t : f.terms()) used = used || t.mono.e[idx] != 0;
      if (used) throw InputError("assignment is missing variable " + name);
      values.push_back(field.zero());
    } else {
      values.push_back(it->second);
    }
  }
  return poly_specialize(ring, f, field, values);
}

}  // namespace cubic
