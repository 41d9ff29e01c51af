#include "jch/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <string>
#include <tuple>

#include "jch/errors.hpp"

namespace jch {

void ModelParams::validate() const {
  if (!std::isfinite(omega_c) || !std::isfinite(delta) || !std::isfinite(lambda) ||
      !std::isfinite(hopping)) {
    throw InputError("model parameters must be finite");
  }
  if (lambda < 0.0) throw InputError("atom-field coupling lambda must be non-negative");
}

SparseHamiltonian::SparseHamiltonian(Basis basis, std::vector<Triplet> entries)
    : basis_(std::move(basis)), entries_(std::move(entries)) {
  for (auto& t : entries_) {
    if (t.row > t.col) std::swap(t.row, t.col);
    if (t.col >= basis_.dimension()) throw InputError("triplet index outside the basis");
  }
  std::sort(entries_.begin(), entries_.end(), [](const Triplet& a, const Triplet& b) {
    return std::tie(a.row, a.col) < std::tie(b.row, b.col);
  });
}

void SparseHamiltonian::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != dim() || y.size() != dim()) {
    throw InputError("apply: vector length " + std::to_string(x.size()) +
                     " does not match dimension " + std::to_string(dim()));
  }
  std::fill(y.begin(), y.end(), 0.0);
  for (const auto& t : entries_) {
    y[t.row] += t.value * x[t.col];
    if (t.row != t.col) y[t.col] += t.value * x[t.row];
  }
}

std::vector<double> SparseHamiltonian::apply(std::span<const double> x) const {
  std::vector<double> y(dim());
  apply(x, y);
  return y;
}

double SparseHamiltonian::expectation(std::span<const double> x) const {
  const auto hx = apply(x);
  return dot(x, hx);
}

DenseMatrix SparseHamiltonian::to_dense() const {
  DenseMatrix m(dim(), dim());
  for (const auto& t : entries_) {
    m(t.row, t.col) += t.value;
    if (t.row != t.col) m(t.col, t.row) += t.value;
  }
  return m;
}

double SparseHamiltonian::norm_bound() const {
  std::vector<double> row_sum(dim(), 0.0);
  for (const auto& t : entries_) {
    row_sum[t.row] += std::abs(t.value);
    if (t.row != t.col) row_sum[t.col] += std::abs(t.value);
  }
  return row_sum.empty() ? 0.0 : *std::max_element(row_sum.begin(), row_sum.end());
}

namespace {

// Emits every nonzero element connecting `s` to a state reachable by one
// application of H, in the direction that lowers the site-1 photon count or
// de-excites an atom, so each pair is produced exactly once.
template <typename Lookup, typename Emit>
void couple(const ModelParams& p, const BasisState& s, std::size_t i, Lookup&& lookup,
            Emit&& emit) {
  const double diagonal = p.omega_c * (s.n1 + s.n2) + p.omega_a() * (s.atom1 + s.atom2);
  if (diagonal != 0.0) emit(i, i, diagonal);

  if (p.lambda != 0.0) {
    // |e_j, n_j> <-> |g_j, n_j + 1> with amplitude lambda sqrt(n_j + 1)
    if (s.atom1 == 1) {
      if (auto j = lookup(BasisState{0, s.atom2, s.n1 + 1, s.n2})) {
        emit(i, *j, p.lambda * std::sqrt(static_cast<double>(s.n1 + 1)));
      }
    }
    if (s.atom2 == 1) {
      if (auto j = lookup(BasisState{s.atom1, 0, s.n1, s.n2 + 1})) {
        emit(i, *j, p.lambda * std::sqrt(static_cast<double>(s.n2 + 1)));
      }
    }
  }
  if (p.hopping != 0.0 && s.n1 > 0) {
    // a_1 a_2^dagger: (n1, n2) -> (n1 - 1, n2 + 1), amplitude h sqrt(n1 (n2 + 1))
    if (auto j = lookup(BasisState{s.atom1, s.atom2, s.n1 - 1, s.n2 + 1})) {
      emit(i, *j, p.hopping * std::sqrt(static_cast<double>(s.n1) * (s.n2 + 1)));
    }
  }
}

}  // namespace

std::vector<Triplet> build_triplets(const ModelParams& params,
                                    std::span<const BasisState> states) {
  params.validate();
  auto key = [](const BasisState& s) { return std::tuple(s.atom1, s.atom2, s.n1, s.n2); };
  std::map<std::tuple<int, int, int, int>, std::size_t> index;
  for (std::size_t i = 0; i < states.size(); ++i) index.emplace(key(states[i]), i);

  auto lookup = [&](const BasisState& s) -> std::optional<std::size_t> {
    if (auto it = index.find(key(s)); it != index.end()) return it->second;
    return std::nullopt;
  };
  std::vector<Triplet> out;
  for (std::size_t i = 0; i < states.size(); ++i) {
    couple(params, states[i], i, lookup, [&](std::size_t r, std::size_t c, double v) {
      out.push_back(Triplet{std::min(r, c), std::max(r, c), v});
    });
  }
  std::sort(out.begin(), out.end(), [](const Triplet& a, const Triplet& b) {
    return std::tie(a.row, a.col) < std::tie(b.row, b.col);
  });
  return out;
}

SparseHamiltonian build_hamiltonian(const ModelParams& params, const Basis& basis) {
  params.validate();
  std::vector<Triplet> entries;
  entries.reserve(4 * basis.dimension());
  const auto states = basis.states();
  auto lookup = [&](const BasisState& s) { return basis.find(s); };
  for (std::size_t i = 0; i < states.size(); ++i) {
    couple(params, states[i], i, lookup, [&](std::size_t r, std::size_t c, double v) {
      entries.push_back(Triplet{std::min(r, c), std::max(r, c), v});
    });
  }
  return SparseHamiltonian(basis, std::move(entries));
}

std::vector<double> apply_hamiltonian(const SparseHamiltonian& h, std::span<const double> v) {
  return h.apply(v);
}

void write_triplets(std::ostream& out, const SparseHamiltonian& h) {
  out << "# dim " << h.dim() << " nnz " << h.entries().size() << '\n';
  char buf[64];
  for (const auto& t : h.entries()) {
    auto res = std::to_chars(buf, buf + sizeof buf, t.value, std::chars_format::general, 17);
    out << t.row << ' ' << t.col << ' ' << std::string_view(buf, res.ptr) << '\n';
  }
}

}  // namespace jch
