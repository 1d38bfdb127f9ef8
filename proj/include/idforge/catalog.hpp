#ifndef IDFORGE_CATALOG_HPP
#define IDFORGE_CATALOG_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "idforge/poly.hpp"

namespace idforge {

/// Named identities.  Variables a..f denote x1..x6; "[,]" is the binary
/// product and "(,,)" / "{,,}" the ternary one of the ambient context.
/// All are returned in canonical form with integer coefficients.
inline MultilinearPoly catalog_identity(OpsContext& ctx, const std::string& name) {
  using P = std::vector<std::pair<long, std::string>>;
  if (name == "LY3") {
    // cyclic sum over (a,b,c) of (a,b,c) + [[a,b],c]
    return poly_from_terms(ctx, 3,
                           P{{1, "(a,b,c)"},
                             {1, "[[a,b],c]"},
                             {1, "(b,c,a)"},
                             {1, "[[b,c],a]"},
                             {1, "(c,a,b)"},
                             {1, "[[c,a],b]"}});
  }
  if (name == "LY4") {
    // cyclic sum over (a,b,c) of ([a,b],c,d)
    return poly_from_terms(ctx, 4, P{{1, "([a,b],c,d)"}, {1, "([b,c],a,d)"}, {1, "([c,a],b,d)"}});
  }
  if (name == "LY5") {
    return poly_from_terms(ctx, 4,
                           P{{1, "(a,b,[c,d])"}, {-1, "[(a,b,c),d]"}, {-1, "[c,(a,b,d)]"}});
  }
  if (name == "LY6") {
    return poly_from_terms(ctx, 5,
                           P{{1, "(a,b,(c,d,e))"},
                             {-1, "((a,b,c),d,e)"},
                             {-1, "(c,(a,b,d),e)"},
                             {-1, "(c,d,(a,b,e))"}});
  }
  if (name == "Malcev") {
    return poly_from_terms(ctx, 4,
                           P{{1, "[[a,c],[b,d]]"},
                             {-1, "[[[a,b],c],d]"},
                             {-1, "[[[b,c],d],a]"},
                             {-1, "[[[c,d],a],b]"},
                             {-1, "[[[d,a],b],c]"}});
  }
  if (name == "FilippovH") {
    return poly_from_terms(ctx, 5,
                           P{{1, "[[[[a,b],c],d],e]"},
                             {1, "[[[[a,b],c],e],d]"},
                             {-1, "[[[[a,b],d],c],e]"},
                             {-1, "[[[[a,b],e],c],d]"},
                             {1, "[[[[a,d],b],e],c]"},
                             {-1, "[[[[a,d],e],b],c]"},
                             {1, "[[[[a,e],b],d],c]"},
                             {-1, "[[[[a,e],d],b],c]"},
                             {2, "[[[a,b],[c,d]],e]"},
                             {2, "[[[a,b],[c,e]],d]"},
                             {2, "[[[a,d],[b,e]],c]"},
                             {2, "[[[a,e],[b,d]],c]"}});
  }
  if (name == "LieJordan-linking") {
    return poly_from_terms(ctx, 3, P{{1, "[[a,b],c]"}, {-1, "{a,b,c}"}, {1, "{b,a,c}"}});
  }
  if (name == "LJY3-deg5-1") {
    return poly_from_terms(ctx, 5,
                           P{{2, "[[{a,c,d},b],e]"},
                             {1, "[[{a,c,d},e],b]"},
                             {-2, "[[{a,e,d},b],c]"},
                             {-1, "[[{a,e,d},c],b]"},
                             {1, "[{a,c,d},[b,e]]"},
                             {-1, "[{a,e,d},[b,c]]"},
                             {1, "{a,[[b,c],e],d}"},
                             {-1, "{a,[[b,e],c],d}"},
                             {-2, "{a,[[c,e],b],d}"}});
  }
  if (name == "LJY3-deg5-2") {
    return poly_from_terms(ctx, 5,
                           P{{2, "{[[b,c],e],a,d}"},
                             {-2, "{[[b,d],e],a,c}"},
                             {1, "{[[b,e],c],a,d}"},
                             {-1, "{[[b,e],d],a,c}"},
                             {2, "{[[c,d],e],a,b}"},
                             {-1, "{[[c,e],b],a,d}"},
                             {1, "{[[c,e],d],a,b}"},
                             {1, "{[[d,e],b],a,c}"},
                             {-1, "{[[d,e],c],a,b}"}});
  }
  if (name == "LJY3-deg5-3") {
    return poly_from_terms(ctx, 5,
                           P{{1, "{[[a,d],e],c,b}"},
                             {-1, "{[[a,e],d],c,b}"},
                             {-1, "{[[c,d],e],a,b}"},
                             {1, "{[[c,e],d],a,b}"},
                             {-2, "{[[d,e],a],c,b}"},
                             {2, "{[[d,e],c],a,b}"},
                             {2, "{b,[[a,c],d],e}"},
                             {-2, "{b,[[a,c],e],d}"},
                             {1, "{b,[[a,d],c],e}"},
                             {-1, "{b,[[a,e],c],d}"},
                             {-1, "{b,[[c,d],a],e}"},
                             {1, "{b,[[c,e],a],d}"}});
  }
  if (name == "LJY3-deg6-1") {
    // signed shuffle sum over Sh_{2,1,2} of the variables b,c,d,e,f
    MultilinearPoly templ = poly_from_terms(ctx, 6, P{{1, "{[[b,c],d],a,[e,f]}"}});
    return shuffle_sum(ctx, {2, 1, 2}, templ, {2, 3, 4, 5, 6}, /*signed_sum=*/true);
  }
  if (name == "LJY3-deg6-2") {
    // signed shuffle sum over Sh_{2,1} of the variables c,d,f
    MultilinearPoly templ = poly_from_terms(ctx, 6,
                                            P{{3, "[{a,[c,d],e},[b,f]]"},
                                              {3, "[{a,[[c,d],b],e},f]"},
                                              {-3, "[[c,d],{a,[b,f],e}]"},
                                              {-3, "[[[c,d],b],{a,f,e}]"},
                                              {-1, "[{a,[[c,d],f],e},b]"},
                                              {-1, "[{a,b,e},[[c,d],f]]"}});
    return shuffle_sum(ctx, {2, 1}, templ, {3, 4, 6}, /*signed_sum=*/true);
  }
  if (name == "LJY3-deg6-3") {
    return poly_from_terms(
        ctx, 6,
        P{{-9, "{e,[[[b,d],a],c],f}"},  {-9, "[[{c,b,d},e],[a,f]]"},
          {-8, "{c,[[a,f],[b,e]],d}"},  {-8, "[[{e,d,f},b],[a,c]]"},
          {-6, "[{c,b,d},[[e,f],a]]"},  {-6, "[[[{e,d,f},c],b],a]"},
          {-4, "{c,[[[a,f],b],e],d}"},  {-4, "[{e,d,f},[[b,c],a]]"},
          {-4, "[{e,[[b,d],c],f},a]"},  {-4, "[[{e,d,f},[a,c]],b]"},
          {-3, "{e,[[[b,d],c],a],f}"},  {-3, "{e,[[[a,d],b],c],f}"},
          {-3, "[{c,b,d},[[a,e],f]]"},  {-3, "[[{c,e,d},f],[a,b]]"},
          {-3, "[{[[d,f],c],b,e},a]"},  {-3, "[{[[c,f],d],b,e},a]"},
          {-2, "{c,[[[e,f],a],b],d}"},  {-2, "{c,[[[b,f],a],e],d}"},
          {-2, "[{e,d,f},[[a,b],c]]"},  {-2, "[{c,f,d},[[b,e],a]]"},
          {-2, "[[{c,e,d},a],[b,f]]"},  {-2, "[{e,[[c,d],b],f},a]"},
          {-2, "[{e,[[b,c],d],f},a]"},  {-2, "[{[[d,e],f],b,c},a]"},
          {-2, "[{[[c,e],f],b,d},a]"},  {-2, "[[{c,f,d},[b,e]],a]"},
          {-1, "[{c,f,d},[[a,b],e]]"},  {-1, "[{c,e,d},[[a,f],b]]"},
          {-1, "[[{c,f,d},b],[a,e]]"},  {-1, "[{[[d,f],e],b,c},a]"},
          {-1, "[{[[c,f],e],b,d},a]"},  {1, "[{c,e,d},[[a,b],f]]"},
          {1, "[{[[e,f],d],b,c},a]"},   {1, "[{[[e,f],c],b,d},a]"},
          {2, "{c,[[[e,f],b],a],d}"},   {2, "{c,[[[b,f],e],a],d}"},
          {2, "[{c,e,d},[[b,f],a]]"},   {2, "[[{c,f,d},a],[b,e]]"},
          {2, "[[{e,d,f},[b,c]],a]"},   {2, "[[{c,e,d},[b,f]],a]"},
          {3, "{e,[[[c,d],b],a],f}"},   {3, "{e,[[[a,d],c],b],f}"},
          {3, "[{c,f,d},[[a,e],b]]"},   {3, "[{c,b,d},[[a,f],e]]"},
          {3, "[[{c,f,d},e],[a,b]]"},   {3, "[[{c,e,d},b],[a,f]]"},
          {4, "{c,[[a,e],[b,f]],d}"},   {4, "{c,[[a,b],[e,f]],d}"},
          {4, "{c,[[[a,f],e],b],d}"},   {4, "[[{e,d,f},a],[b,c]]"},
          {4, "[[{c,f,d},[a,e]],b]"},   {6, "[[{e,d,f},c],[a,b]]"},
          {6, "[[{c,b,d},a],[e,f]]"},   {6, "[[[{c,b,d},e],f],a]"},
          {9, "{e,[[[c,d],a],b],f}"},   {9, "[[{c,b,d},f],[a,e]]"},
          {12, "{e,[[a,d],[b,c]],f}"},  {12, "{e,[[[b,c],d],a],f}"}});
  }
  throw std::invalid_argument("unknown identity name: " + name);
}

/// Default known-identity map for the LY operations, degree -> identities.
inline std::vector<std::pair<int, std::string>> ly_identity_names() {
  return {{3, "LY3"}, {4, "LY4"}, {4, "LY5"}, {5, "LY6"}};
}

/// Known identities of the LJY3 algebra up to degree 5 (used when searching
/// degree 6): Malcev and Filippov h-identity for the bilinear product plus
/// the three degree-5 mixed identities.
inline std::vector<std::pair<int, std::string>> ljy3_identity_names() {
  return {{4, "Malcev"},      {5, "FilippovH"},   {5, "LJY3-deg5-1"},
          {5, "LJY3-deg5-2"}, {5, "LJY3-deg5-3"}};
}

} // namespace idforge

#endif
