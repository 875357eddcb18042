#include "rlab/laurent.hpp"

#include "rlab/parallel.hpp"

#include <array>
#include <cmath>

namespace rlab {

namespace {

bool is_integral(double v) { return std::isfinite(v) && v == std::round(v) && std::abs(v) < 1e12; }

// beta . d < 0 for every generator d of every piece's recession cone.
Integrability exact_piece_verdict(const std::vector<std::vector<std::vector<long long>>>& rays,
                                  const std::vector<double>& beta, bool integral) {
  for (const auto& piece_rays : rays) {
    for (const auto& d : piece_rays) {
      if (integral) {
        long long dot = 0;
        for (std::size_t j = 0; j < d.size(); ++j) dot += static_cast<long long>(beta[j]) * d[j];
        if (dot >= 0) return Integrability::Divergent;
      } else {
        double dot = 0;
        for (std::size_t j = 0; j < d.size(); ++j) dot += beta[j] * static_cast<double>(d[j]);
        if (!(dot < 0)) return Integrability::Divergent;
      }
    }
  }
  return Integrability::Integrable;
}

// Nested boxes of side 4, 8, 16, 32 (log coordinates) around the extraction center.
std::vector<Integrability> numeric_verdicts(const ReinhardtDomain& domain, const BergmanWeight& weight,
                                            const std::vector<MultiIndex>& box) {
  const int n = domain.dimension();
  const Eigen::VectorXd center = extraction_ball(domain).center;
  constexpr int kLevels = 4;
  constexpr double kOuterHalf = 16.0;
  const double h = n == 1 ? 0.03125 : (n == 2 ? 0.125 : 0.5);
  const auto per_axis = static_cast<std::size_t>(std::llround(2 * kOuterHalf / h));
  std::size_t total = 1;
  for (int j = 0; j < n; ++j) total *= per_axis;

  struct Node {
    Eigen::VectorXd x;
    double log_weight;
    int level;
  };
  std::vector<std::optional<Node>> nodes(total);
  parallel_for(total, [&](std::size_t flat) {
    Eigen::VectorXd x(n);
    std::size_t rem = flat;
    double extent = 0;
    for (int j = 0; j < n; ++j) {
      const double offset = -kOuterHalf + (static_cast<double>(rem % per_axis) + 0.5) * h;
      rem /= per_axis;
      x[j] = center[j] + offset;
      extent = std::max(extent, std::abs(offset));
    }
    Point<double> z(n);
    for (int j = 0; j < n; ++j) z[j] = std::exp(x[j]);
    if (!contains(domain, z, 0.0)) return;
    Eigen::VectorXd r(n);
    for (int j = 0; j < n; ++j) r[j] = std::exp(x[j]);
    const double w = weight.radial_weight(r);
    if (!(w > 0) || !std::isfinite(w)) throw PreconditionError("Bergman weight must be positive and finite");
    int level = 0;
    while (level < kLevels - 1 && extent > 2.0 * std::ldexp(1.0, level)) ++level;
    nodes[flat] = Node{x, std::log(w), level};
  });

  std::vector<Integrability> out(box.size());
  parallel_for(box.size(), [&](std::size_t i) {
    const MultiIndex& alpha = box[i];
    std::array<long double, kLevels> partial{};
    for (const auto& node : nodes) {
      if (!node) continue;
      long double e = node->log_weight;
      for (int j = 0; j < n; ++j)
        e += (weight.p * alpha[static_cast<std::size_t>(j)] + 2.0) * node->x[j];
      partial[static_cast<std::size_t>(node->level)] += std::exp(e);
    }
    std::array<long double, kLevels> cumulative{};
    long double run = 0;
    for (int l = 0; l < kLevels; ++l) cumulative[static_cast<std::size_t>(l)] = (run += partial[static_cast<std::size_t>(l)]);
    if (!(cumulative[0] > 0)) {
      out[i] = Integrability::Indeterminate;
      return;
    }
    const long double last = cumulative[3] / cumulative[2];
    const long double before = cumulative[2] / cumulative[1];
    if (!std::isfinite(static_cast<double>(last)) || last > 1.5L)
      out[i] = Integrability::Divergent;
    else if (last < 1.01L && before < 1.5L)
      out[i] = Integrability::Integrable;
    else
      out[i] = Integrability::Indeterminate;
  });
  return out;
}

}  // namespace

BergmanWeight BergmanWeight::unweighted(double p, int n) {
  return power_law(p, std::vector<double>(static_cast<std::size_t>(n), 0.0));
}

BergmanWeight BergmanWeight::power_law(double p, std::vector<double> exponents) {
  BergmanWeight w;
  w.p = p;
  w.power = exponents;
  w.radial_weight = [exponents](const Eigen::VectorXd& r) {
    double v = 1.0;
    for (std::size_t j = 0; j < exponents.size(); ++j) v *= std::pow(r[static_cast<Eigen::Index>(j)], exponents[j]);
    return v;
  };
  return w;
}

const char* to_string(Integrability v) {
  switch (v) {
    case Integrability::Integrable: return "integrable";
    case Integrability::Divergent: return "divergent";
    case Integrability::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

BergmanVerdict missing_monomials_bergman(const ReinhardtDomain& domain, const BergmanWeight& weight, int alpha_box) {
  if (!(weight.p >= 1)) throw PreconditionError("Bergman exponent p must be >= 1");
  if (!weight.radial_weight) throw PreconditionError("Bergman weight evaluator missing");
  if (alpha_box < 0) throw PreconditionError("alpha_box must be >= 0");
  const int n = domain.dimension();
  if (weight.power && static_cast<int>(weight.power->size()) != n)
    throw PreconditionError("Bergman weight exponent dimension mismatch");
  const auto box = index_box(static_cast<std::size_t>(n), alpha_box);

  BergmanVerdict out;
  std::vector<Integrability> verdicts;
  if (weight.power) {
    out.method = "exact";
    bool integral = is_integral(weight.p);
    for (double w : *weight.power) integral = integral && is_integral(w);
    std::vector<std::vector<std::vector<long long>>> rays;
    if (!domain.pieces().empty()) {
      for (const auto& piece : domain.pieces()) rays.push_back(recession_rays(piece, n));
    } else {
      std::vector<std::vector<long long>> coordinate;
      for (int j : domain.shadow().recession_directions) {
        std::vector<long long> d(static_cast<std::size_t>(n), 0);
        d[static_cast<std::size_t>(j)] = -1;
        coordinate.push_back(d);
      }
      rays.push_back(coordinate);
    }
    for (const auto& alpha : box) {
      std::vector<double> beta(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j)
        beta[static_cast<std::size_t>(j)] = weight.p * alpha[static_cast<std::size_t>(j)] + 2.0 + (*weight.power)[static_cast<std::size_t>(j)];
      verdicts.push_back(exact_piece_verdict(rays, beta, integral));
    }
  } else {
    out.method = "numeric";
    verdicts = numeric_verdicts(domain, weight, box);
  }
  for (std::size_t i = 0; i < box.size(); ++i) {
    out.verdicts.emplace_back(box[i], verdicts[i]);
    if (verdicts[i] == Integrability::Integrable) out.integrable.push_back(box[i]);
    if (verdicts[i] == Integrability::Indeterminate) ++out.indeterminate;
  }
  return out;
}

SmoothBoundaryConstraint missing_monomials_smooth_boundary(const ReinhardtDomain& domain, int alpha_box) {
  if (alpha_box < 0) throw PreconditionError("alpha_box must be >= 0");
  SmoothBoundaryConstraint c;
  c.nonnegative = closure_axis_contact(domain);
  for (auto& alpha : index_box(static_cast<std::size_t>(domain.dimension()), alpha_box))
    if (smooth_boundary_witness(c, alpha).allowed) c.allowed.push_back(std::move(alpha));
  return c;
}

SmoothBoundaryWitness smooth_boundary_witness(const SmoothBoundaryConstraint& c, const MultiIndex& alpha) {
  if (alpha.size() != c.nonnegative.size()) throw PreconditionError("smooth_boundary_witness: dimension mismatch");
  SmoothBoundaryWitness w;
  w.beta = MultiIndex(std::vector<int>(alpha.size()));
  w.gamma = MultiIndex(std::vector<int>(alpha.size()));
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    w.beta[j] = std::max(alpha[j], 0);
    w.gamma[j] = std::max(-alpha[j], 0);
    if (c.nonnegative[j] && w.gamma[j] > 0) w.obstructions.push_back(static_cast<int>(j));
  }
  w.allowed = w.obstructions.empty();
  return w;
}

}  // namespace rlab
