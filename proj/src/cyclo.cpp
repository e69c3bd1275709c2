#include "skein/cyclo.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace skein {

namespace {

using ZPoly = std::vector<mpz_class>;  // coefficient list, low degree first

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division of polynomials with integer coefficients (remainder known zero,
// divisor monic up to sign at each step for the cyclotomic tower).
ZPoly zdiv(const ZPoly& num, const ZPoly& den) {
  ZPoly rem = num;
  ZPoly quo(num.size() > den.size() ? num.size() - den.size() + 1 : 1, 0);
  while (rem.size() >= den.size() && !rem.empty()) {
    size_t shift = rem.size() - den.size();
    mpz_class lead = rem.back() / den.back();
    quo[shift] = lead;
    for (size_t i = 0; i < den.size(); ++i) rem[shift + i] -= lead * den[i];
    ztrim(rem);
  }
  ztrim(quo);
  return quo;
}

// Phi_M via x^M - 1 divided by the cyclotomic polynomials of proper divisors.
ZPoly cyclotomic_poly(int M) {
  static std::map<int, ZPoly> memo;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto compute = [](auto&& self, int m) -> const ZPoly& {
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    ZPoly num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (int d = 1; d < m; ++d) {
      if (m % d == 0) num = zdiv(num, self(self, d));
    }
    return memo.emplace(m, std::move(num)).first->second;
  };
  return compute(compute, M);
}

}  // namespace

FieldTable::FieldTable(int M) : M_(M) {
  if (M < 1) throw SkeinError("field order must be positive");
  ZPoly phi = cyclotomic_poly(M);
  degree_ = static_cast<int>(phi.size()) - 1;
  rows_.resize(M);
  for (int e = 0; e < degree_ && e < M; ++e) {
    rows_[e].assign(degree_, 0);
    rows_[e][e] = 1;
  }
  // x^degree mod Phi = -(lower coefficients); then multiply by x repeatedly.
  std::vector<Rat> cur(degree_);
  for (int i = 0; i < degree_; ++i) cur[i] = Rat(-phi[i]);
  for (int e = degree_; e < M; ++e) {
    rows_[e] = cur;
    // cur := x * cur mod Phi
    Rat top = cur[degree_ - 1];
    for (int i = degree_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0) {
      for (int i = 0; i < degree_; ++i) cur[i] += top * Rat(-phi[i]);
    }
    for (auto& r : cur) r.canonicalize();
  }
}

const std::vector<Rat>& FieldTable::power(int e) const {
  int r = e % M_;
  if (r < 0) r += M_;
  return rows_[r];
}

FieldPtr field_table(int M) {
  static std::map<int, FieldPtr> memo;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(M);
  if (it != memo.end()) return it->second;
  auto ptr = std::make_shared<FieldTable>(M);
  memo.emplace(M, ptr);
  return ptr;
}

Cyclo::Cyclo(FieldPtr field, std::vector<Rat> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
  if (static_cast<int>(c_.size()) != field_->degree())
    throw SkeinError("coefficient vector has wrong length");
}

Cyclo Cyclo::zero(const FieldPtr& field) {
  return Cyclo(field, std::vector<Rat>(field->degree(), 0));
}

Cyclo Cyclo::one(const FieldPtr& field) { return from_rational(field, 1); }

Cyclo Cyclo::from_rational(const FieldPtr& field, const Rat& r) {
  std::vector<Rat> c(field->degree(), 0);
  c[0] = r;
  return Cyclo(field, std::move(c));
}

Cyclo Cyclo::zeta_pow(const FieldPtr& field, long e) {
  std::vector<Rat> c = field->power(static_cast<int>(((e % field->M()) + field->M()) % field->M()));
  return Cyclo(field, std::move(c));
}

Cyclo Cyclo::from_terms(const FieldPtr& field,
                        const std::vector<std::pair<long, Rat>>& terms) {
  std::vector<Rat> c(field->degree(), 0);
  for (const auto& [e, coeff] : terms) {
    const auto& row = field->power(static_cast<int>(((e % field->M()) + field->M()) % field->M()));
    for (int i = 0; i < field->degree(); ++i) c[i] += coeff * row[i];
  }
  return Cyclo(field, std::move(c));
}

bool Cyclo::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyclo::operator==(const Cyclo& o) const {
  check_same_field(o);
  return c_ == o.c_;
}

void Cyclo::check_same_field(const Cyclo& o) const {
  if (!field_ || !o.field_ || field_->M() != o.field_->M())
    throw SkeinError("mixed field operands");
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
  check_same_field(o);
  std::vector<Rat> c(c_);
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
  return Cyclo(field_, std::move(c));
}

Cyclo Cyclo::operator-(const Cyclo& o) const {
  check_same_field(o);
  std::vector<Rat> c(c_);
  for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c_[i];
  return Cyclo(field_, std::move(c));
}

Cyclo Cyclo::operator-() const {
  std::vector<Rat> c(c_);
  for (auto& x : c) x = -x;
  return Cyclo(field_, std::move(c));
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
  check_same_field(o);
  int d = field_->degree();
  std::vector<Rat> conv(2 * d - 1, 0);
  for (int i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (o.c_[j] == 0) continue;
      conv[i + j] += c_[i] * o.c_[j];
    }
  }
  std::vector<Rat> c(conv.begin(), conv.begin() + d);
  for (int e = d; e < 2 * d - 1; ++e) {
    if (conv[e] == 0) continue;
    const auto& row = field_->power(e);
    for (int i = 0; i < d; ++i) c[i] += conv[e] * row[i];
  }
  return Cyclo(field_, std::move(c));
}

Cyclo Cyclo::operator*(const Rat& r) const {
  std::vector<Rat> c(c_);
  for (auto& x : c) x *= r;
  return Cyclo(field_, std::move(c));
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw SkeinError("division by zero in cyclotomic field");
  int d = field_->degree();
  // Solve (this * y) = 1 by Gaussian elimination on the multiplication matrix.
  // Column j of the matrix is this * z^j.
  std::vector<std::vector<Rat>> a(d, std::vector<Rat>(d + 1, 0));
  for (int j = 0; j < d; ++j) {
    Cyclo col = *this * zeta_pow(field_, j);
    for (int i = 0; i < d; ++i) a[i][j] = col.c_[i];
  }
  a[0][d] = 1;
  for (int col = 0, row = 0; col < d && row < d; ++col) {
    int piv = -1;
    for (int r = row; r < d; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[row]);
    Rat inv = 1 / a[row][col];
    for (int k = col; k <= d; ++k) a[row][k] *= inv;
    for (int r = 0; r < d; ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (int k = col; k <= d; ++k) a[r][k] -= f * a[row][k];
    }
    ++row;
  }
  std::vector<Rat> y(d, 0);
  for (int i = 0; i < d; ++i) y[i] = a[i][d];
  Cyclo result(field_, std::move(y));
  return result;
}

Cyclo Cyclo::conj() const {
  int d = field_->degree();
  std::vector<Rat> c(d, 0);
  for (int j = 0; j < d; ++j) {
    if (c_[j] == 0) continue;
    const auto& row = field_->power(field_->M() - j);
    for (int i = 0; i < d; ++i) c[i] += c_[j] * row[i];
  }
  return Cyclo(field_, std::move(c));
}

std::string Cyclo::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    if (!first) out << " + ";
    out << c_[j].get_str();
    if (j == 1) out << "*z";
    if (j > 1) out << "*z^" << j;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

size_t Cyclo::hash() const {
  size_t h = 1469598103934665603ull;
  auto mix = [&h](size_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  for (const auto& x : c_) {
    mix(std::hash<long>()(mpz_get_si(x.get_num().get_mpz_t())));
    mix(std::hash<long>()(mpz_get_si(x.get_den().get_mpz_t())));
  }
  return h;
}

}  // namespace skein
