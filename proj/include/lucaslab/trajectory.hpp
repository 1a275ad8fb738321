#pragma once

namespace lucaslab {

/// One sample of a closed-form solution: consumption, the two capital
/// stocks, the labor share, and the two shadow prices.
struct TrajectoryPoint {
  double t;
  double c;
  double k;
  double h;
  double u;
  double lambda;
  double mu;
};

enum class ModelTag { crra, log };
enum class FamilyTag { a, b };  // a: two-first-integral form, b: one-first-integral form

inline const char* model_name(ModelTag m) { return m == ModelTag::crra ? "crra" : "log"; }
inline const char* family_name(FamilyTag f) { return f == FamilyTag::a ? "a" : "b"; }

}  // namespace lucaslab
