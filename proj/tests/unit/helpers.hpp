#pragma once

#include <crmw/series.hpp>
#include <crmw/series_matrix.hpp>

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace testing_support {

using namespace crmw;

struct T {
  std::vector<int> exp;
  std::string c;
};

inline TruncatedSeries poly(const VarSpace &sp, int order, std::initializer_list<T> terms,
                            Grading g = Grading::Total) {
  TruncatedSeries f(sp, order, g);
  for (const auto &t : terms) {
    Monomial m{};
    for (std::size_t k = 0; k < t.exp.size(); ++k)
      m[k] = static_cast<std::uint8_t>(t.exp[k]);
    f.add_term(m, GR::parse(t.c));
  }
  return f;
}

inline Monomial mono(std::initializer_list<int> e) {
  Monomial m{};
  std::size_t k = 0;
  for (int x : e)
    m[k++] = static_cast<std::uint8_t>(x);
  return m;
}

inline GR q(const char *s) { return GR::parse(s); }

} // namespace testing_support
