#include "copos/basis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace copos {

namespace {

std::string exps_str(const Exponents& e) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out << ",";
    out << e[i];
  }
  out << ")";
  return out.str();
}

void enumerate_degree(int vars, int degree, Exponents& prefix,
                      std::vector<Exponents>& out) {
  if (static_cast<int>(prefix.size()) == vars - 1) {
    prefix.push_back(degree);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  // Descending loop keeps the canonical order: (omega,0,..,0) comes first.
  for (int e = degree; e >= 0; --e) {
    prefix.push_back(e);
    enumerate_degree(vars, degree - e, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

MonomialBasis::MonomialBasis(int n, int omega, std::vector<Exponents> alphas)
    : n_(n), omega_(omega), alphas_(std::move(alphas)) {
  if (n_ < 1 || omega_ < 1) fail(ErrorCode::InvalidArgument, "basis needs n >= 1 and omega >= 1");
  if (alphas_.empty()) fail(ErrorCode::InvalidArgument, "empty monomial basis");
  Exponents leading(n_ + 1, 0);
  leading[0] = omega_;
  if (alphas_.front() != leading) {
    fail(ErrorCode::InvalidArgument, "basis must start with the leading monomial (omega,0,...,0)");
  }
  for (int i = 0; i < static_cast<int>(alphas_.size()); ++i) {
    const Exponents& a = alphas_[i];
    if (static_cast<int>(a.size()) != n_ + 1 || total_degree(a) != omega_) {
      fail(ErrorCode::InvalidArgument, "basis element with wrong arity or degree");
    }
    if (!index_.emplace(a, i).second) {
      fail(ErrorCode::InvalidArgument, "duplicate basis element " + exps_str(a));
    }
  }
}

int MonomialBasis::index_of(const Exponents& e) const {
  auto it = index_.find(e);
  return it == index_.end() ? -1 : it->second;
}

BasisPtr full_basis(int n, int omega) {
  if (n < 1 || omega < 1) fail(ErrorCode::InvalidArgument, "full_basis needs n >= 1 and omega >= 1");
  std::vector<Exponents> alphas;
  Exponents prefix;
  enumerate_degree(n + 1, omega, prefix, alphas);
  return std::make_shared<MonomialBasis>(n, omega, std::move(alphas));
}

BasisPtr covering_basis(const std::vector<Exponents>& targets, int n, int omega) {
  GradedLexLess less;
  std::set<Exponents, GradedLexLess> chosen;
  Exponents leading(n + 1, 0);
  leading[0] = omega;
  chosen.insert(leading);

  std::vector<Exponents> sorted = targets;
  std::sort(sorted.begin(), sorted.end(), less);
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  for (const Exponents& gamma : sorted) {
    if (static_cast<int>(gamma.size()) != n + 1 || total_degree(gamma) != 2 * omega) {
      fail(ErrorCode::InvalidArgument, "covering target " + exps_str(gamma) +
                                           " is not a degree-2*omega monomial");
    }
    bool covered = false;
    for (const Exponents& a : chosen) {
      Exponents b(n + 1);
      bool ok = true;
      for (int i = 0; i <= n; ++i) {
        b[i] = gamma[i] - a[i];
        if (b[i] < 0) {
          ok = false;
          break;
        }
      }
      if (ok && chosen.count(b)) {
        covered = true;
        break;
      }
    }
    if (covered) continue;

    // Enumerate decompositions gamma = a + b with a >= b in the canonical
    // order; take the least pair.
    std::vector<Exponents> halves;
    Exponents prefix;
    enumerate_degree(n + 1, omega, prefix, halves);
    bool placed = false;
    for (const Exponents& a : halves) {
      Exponents b(n + 1);
      bool ok = true;
      for (int i = 0; i <= n; ++i) {
        b[i] = gamma[i] - a[i];
        if (b[i] < 0) {
          ok = false;
          break;
        }
      }
      if (!ok || less(b, a)) continue;  // keep a <= b in scan order, i.e. a canonical-first
      chosen.insert(a);
      chosen.insert(b);
      placed = true;
      break;
    }
    if (!placed) fail(ErrorCode::Internal, "no degree-omega pair covers " + exps_str(gamma));
  }

  std::vector<Exponents> alphas(chosen.begin(), chosen.end());
  // The canonical comparator puts the leading monomial first already.
  return std::make_shared<MonomialBasis>(n, omega, std::move(alphas));
}

ConsistencyClasses consistency_classes(const MonomialBasis& basis) {
  std::map<Exponents, std::vector<std::pair<int, int>>, GradedLexLess> groups;
  const int size = basis.size();
  Exponents sum(basis.n() + 1);
  for (int i = 0; i < size; ++i) {
    for (int j = i; j < size; ++j) {
      for (int k = 0; k <= basis.n(); ++k) sum[k] = basis.alpha(i)[k] + basis.alpha(j)[k];
      groups[sum].emplace_back(i, j);
    }
  }
  ConsistencyClasses out;
  out.sums.reserve(groups.size());
  out.classes.reserve(groups.size());
  for (auto& [key, pairs] : groups) {
    out.sums.push_back(key);
    out.classes.push_back(std::move(pairs));
  }
  return out;
}

}  // namespace copos
