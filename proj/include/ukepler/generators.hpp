#pragma once

#include <optional>

#include "ukepler/poisson.hpp"

namespace ukepler {

// Realization generators on the magnetized phase space, plus the derived
// physical observables:
//   X(u)   = <x|{pi u pi}> + n mu^2 tr(xu)/(tr x)^2 - mu i tr(x[u,pi])/tr x
//   Y(v)   = <v|x>
//   S(u,v) = <S_uv(x)|pi> - mu i tr(x[u,v])/(2 tr x)
//   L(u)   = S(u,e) = <ux|pi>
//   Luv    = (S(u,v) - S(v,u))/2
//   Ham    = X(e)/(2 Y(e)) - 1/Y(e)
//   LRL(u) = (X(u) - Y(u) X(e)/Y(e))/2 + Y(u)/Y(e)
//   L2     = (1/2) sum_{a,b} Luv(e_a,e_b)^2
//   A2     = -1 + sum_a LRL(e_a)^2
enum class GenKind { X, Y, S, L, Luv, Ham, LRL, L2, A2 };

// Deliberate corruptions for negative-control runs of the verification
// suites; Clean is the faithful realization.
enum class GenVariant { Clean, FlipSMuSign, DropXMuSq };

struct GeneratorSpec {
  GenKind kind;
  std::optional<Element<double>> u;
  std::optional<Element<double>> v;
};

const char* kind_name(GenKind k);
std::optional<GenKind> kind_from_name(const std::string& name);

Observable compile(const GeneratorSpec& spec, double mu, const AlgebraDescriptor& desc,
                   GenVariant variant = GenVariant::Clean);

Observable gen_X(const Element<double>& u, double mu, GenVariant variant = GenVariant::Clean);
Observable gen_Y(const Element<double>& u);
Observable gen_S(const Element<double>& u, const Element<double>& v, double mu,
                 GenVariant variant = GenVariant::Clean);
Observable gen_L(const Element<double>& u);
Observable gen_Luv(const Element<double>& u, const Element<double>& v, double mu,
                   GenVariant variant = GenVariant::Clean);
Observable hamiltonian(const AlgebraDescriptor& desc, double mu,
                       GenVariant variant = GenVariant::Clean);
Observable lrl(const Element<double>& u, double mu, GenVariant variant = GenVariant::Clean);
Observable casimir_l2(const AlgebraDescriptor& desc, double mu,
                      GenVariant variant = GenVariant::Clean);
Observable casimir_a2(const AlgebraDescriptor& desc, double mu,
                      GenVariant variant = GenVariant::Clean);

}  // namespace ukepler
