#include "rlab/corpus.hpp"

namespace rlab::corpus {

namespace {

MonomialBound lt(MultiIndex alpha, double c) { return MonomialBound::less_than(std::move(alpha), c); }

}  // namespace

ReinhardtDomain unit_disc() { return domain_from_pieces(1, {LogPiece{{lt({1}, 1.0)}}}); }

ReinhardtDomain punctured_disc() {
  return domain_from_pieces(1, {LogPiece{{lt({1}, 1.0)}}}, std::vector<bool>{false});
}

ReinhardtDomain annulus(double inner, double outer) {
  return domain_from_pieces(1, {LogPiece{{lt({1}, outer), lt({-1}, 1.0 / inner)}}});
}

ReinhardtDomain unit_bidisc() {
  return domain_from_pieces(2, {LogPiece{{lt({1, 0}, 1.0), lt({0, 1}, 1.0)}}});
}

ReinhardtDomain hartogs_triangle() {
  return domain_from_pieces(2, {LogPiece{{lt({1, -1}, 1.0), lt({0, 1}, 1.0)}}});
}

ReinhardtDomain hartogs_figure() {
  return domain_from_pieces(2, {LogPiece{{lt({1, 0}, 1.0), lt({0, 1}, 1.0), lt({0, -1}, 2.0)}},
                                LogPiece{{lt({1, 0}, 0.5), lt({0, 1}, 1.0)}}});
}

ReinhardtDomain l_shape() {
  return domain_from_pieces(
      2, {LogPiece{{lt({1, 0}, 0.9), lt({-1, 0}, 10.0), lt({0, 1}, 0.2), lt({0, -1}, 10.0)}},
          LogPiece{{lt({1, 0}, 0.2), lt({-1, 0}, 10.0), lt({0, 1}, 0.9), lt({0, -1}, 10.0)}}});
}

}  // namespace rlab::corpus
