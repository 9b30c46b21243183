#pragma once

#include <random>

namespace spbw {

template <class Rng>
SkewPoly random_poly(const Presentation& p, Rng& rng, unsigned max_deg, std::size_t max_terms) {
  SkewPoly f(p);
  std::uniform_int_distribution<std::size_t> nterms(0, max_terms);
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  std::uniform_int_distribution<std::size_t> var(0, p.n() - 1);
  std::uniform_int_distribution<std::size_t> elem(1, p.ring().order() - 1);
  const std::size_t t = p.ring().order() > 1 ? nterms(rng) : 0;
  for (std::size_t k = 0; k < t; ++k) {
    MultiIndex alpha(p.n());
    for (unsigned left = deg(rng); left > 0; --left) {
      const std::size_t v = var(rng);
      alpha.set(v, alpha[v] + 1);
    }
    // Index 0 is not necessarily the zero element, so skip zero explicitly.
    Elem r = static_cast<Elem>(elem(rng));
    if (r == p.ring().zero()) r = 0;
    f.add_term(alpha, r);
  }
  return f;
}

}  // namespace spbw
