#include "pdc/types.hpp"

#include "pdc/errors.hpp"

namespace pdc {

const char* to_string(Formulation f) {
  switch (f) {
    case Formulation::rk: return "rk";
    case Formulation::gmls: return "gmls";
    case Formulation::ba_rk: return "ba_rk";
    case Formulation::ba_gmls: return "ba_gmls";
  }
  return "?";
}

Formulation formulation_from_string(std::string_view s) {
  if (s == "rk") return Formulation::rk;
  if (s == "gmls") return Formulation::gmls;
  if (s == "ba_rk") return Formulation::ba_rk;
  if (s == "ba_gmls") return Formulation::ba_gmls;
  throw InvalidArgument("unknown formulation: " + std::string(s));
}

}  // namespace pdc
