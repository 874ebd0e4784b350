#include "ukepler/generators.hpp"

namespace ukepler {

namespace {

void check_mu(const AlgebraDescriptor& desc, double mu) {
  if (desc.tag == AlgebraTag::Gamma3 && mu != 0.0)
    throw_unsupported("nonzero magnetic charge is not defined on the spin factor");
}

void check_param(const GeneratorSpec& spec, const AlgebraDescriptor& desc) {
  const bool needs_u = spec.kind == GenKind::X || spec.kind == GenKind::Y ||
                       spec.kind == GenKind::S || spec.kind == GenKind::L ||
                       spec.kind == GenKind::Luv || spec.kind == GenKind::LRL;
  const bool needs_v = spec.kind == GenKind::S || spec.kind == GenKind::Luv;
  if (needs_u && !spec.u) throw_usage("generator spec is missing its first element parameter");
  if (needs_v && !spec.v) throw_usage("generator spec is missing its second element parameter");
  if (spec.u && !(spec.u->desc == desc)) throw_usage("generator parameter algebra mismatch");
  if (spec.v && !(spec.v->desc == desc)) throw_usage("generator parameter algebra mismatch");
}

Jet eval_Y(const JetContext& ctx, const Element<Jet>& u) { return inner(u, ctx.x()); }

Jet eval_X(const JetContext& ctx, const Element<Jet>& u, GenVariant variant) {
  Jet val = inner(ctx.x(), smap(ctx.pi(), u, ctx.pi()));
  const double mu = ctx.mu();
  if (mu != 0.0) {
    const Jet tx = trace(ctx.x());
    if (variant != GenVariant::DropXMuSq) {
      const Jet trxu = trace(jmul(ctx.x(), u));
      val += (ctx.descriptor().n * mu * mu) * trxu / (tx * tx);
    }
    val -= mu * itr_comm(ctx.x(), u, ctx.pi()) / tx;
  }
  return val;
}

Jet eval_S(const JetContext& ctx, const Element<Jet>& u, const Element<Jet>& v,
           GenVariant variant) {
  Jet val = inner(smap(u, v, ctx.x()), ctx.pi());
  const double mu = ctx.mu();
  if (mu != 0.0) {
    const double sign = variant == GenVariant::FlipSMuSign ? 1.0 : -1.0;
    val += (sign * mu * 0.5) * itr_comm(ctx.x(), u, v) / trace(ctx.x());
  }
  return val;
}

Jet eval_L(const JetContext& ctx, const Element<Jet>& u) {
  return inner(jmul(u, ctx.x()), ctx.pi());
}

Jet eval_Luv(const JetContext& ctx, const Element<Jet>& u, const Element<Jet>& v,
             GenVariant variant) {
  Jet val = inner(lcomm(u, v, ctx.x()), ctx.pi());
  const double mu = ctx.mu();
  if (mu != 0.0) {
    const double sign = variant == GenVariant::FlipSMuSign ? 1.0 : -1.0;
    val += (sign * mu * 0.5) * itr_comm(ctx.x(), u, v) / trace(ctx.x());
  }
  return val;
}

Jet eval_Ham(const JetContext& ctx, const Element<Jet>& e, GenVariant variant) {
  const Jet Xe = eval_X(ctx, e, variant);
  const Jet Ye = eval_Y(ctx, e);
  return 0.5 * Xe / Ye - 1.0 / Ye;
}

Jet eval_LRL(const JetContext& ctx, const Element<Jet>& u, const Element<Jet>& e,
             GenVariant variant) {
  const Jet Xu = eval_X(ctx, u, variant);
  const Jet Yu = eval_Y(ctx, u);
  const Jet Xe = eval_X(ctx, e, variant);
  const Jet Ye = eval_Y(ctx, e);
  return 0.5 * (Xu - Yu * Xe / Ye) + Yu / Ye;
}

std::vector<Element<Jet>> lifted_onb(const AlgebraDescriptor& desc) {
  std::vector<Element<Jet>> basis;
  for (const auto& e : onb(desc)) basis.push_back(lift_to_jet(e));
  return basis;
}

}  // namespace

const char* kind_name(GenKind k) {
  switch (k) {
    case GenKind::X: return "X";
    case GenKind::Y: return "Y";
    case GenKind::S: return "S";
    case GenKind::L: return "L";
    case GenKind::Luv: return "Luv";
    case GenKind::Ham: return "Ham";
    case GenKind::LRL: return "LRL";
    case GenKind::L2: return "L2";
    case GenKind::A2: return "A2";
  }
  return "?";
}

std::optional<GenKind> kind_from_name(const std::string& name) {
  if (name == "X") return GenKind::X;
  if (name == "Y") return GenKind::Y;
  if (name == "S") return GenKind::S;
  if (name == "L") return GenKind::L;
  if (name == "Luv") return GenKind::Luv;
  if (name == "Ham") return GenKind::Ham;
  if (name == "LRL") return GenKind::LRL;
  if (name == "L2") return GenKind::L2;
  if (name == "A2") return GenKind::A2;
  return std::nullopt;
}

Observable compile(const GeneratorSpec& spec, double mu, const AlgebraDescriptor& desc,
                   GenVariant variant) {
  check_mu(desc, mu);
  check_param(spec, desc);
  const Element<Jet> e = lift_to_jet(Element<double>::identity(desc));
  const std::string label = std::string(kind_name(spec.kind));

  switch (spec.kind) {
    case GenKind::X: {
      auto u = lift_to_jet(*spec.u);
      return {label, [u, variant](const JetContext& ctx) { return eval_X(ctx, u, variant); }};
    }
    case GenKind::Y: {
      auto u = lift_to_jet(*spec.u);
      return {label, [u](const JetContext& ctx) { return eval_Y(ctx, u); }};
    }
    case GenKind::S: {
      auto u = lift_to_jet(*spec.u);
      auto v = lift_to_jet(*spec.v);
      return {label,
              [u, v, variant](const JetContext& ctx) { return eval_S(ctx, u, v, variant); }};
    }
    case GenKind::L: {
      auto u = lift_to_jet(*spec.u);
      return {label, [u](const JetContext& ctx) { return eval_L(ctx, u); }};
    }
    case GenKind::Luv: {
      auto u = lift_to_jet(*spec.u);
      auto v = lift_to_jet(*spec.v);
      return {label,
              [u, v, variant](const JetContext& ctx) { return eval_Luv(ctx, u, v, variant); }};
    }
    case GenKind::Ham:
      return {label, [e, variant](const JetContext& ctx) { return eval_Ham(ctx, e, variant); }};
    case GenKind::LRL: {
      auto u = lift_to_jet(*spec.u);
      return {label,
              [u, e, variant](const JetContext& ctx) { return eval_LRL(ctx, u, e, variant); }};
    }
    case GenKind::L2: {
      auto basis = lifted_onb(desc);
      return {label, [basis, variant](const JetContext& ctx) {
                const size_t dim = basis.size();
                // cache e_b x once per beta
                std::vector<Element<Jet>> bx;
                bx.reserve(dim);
                for (const auto& eb : basis) bx.push_back(jmul(eb, ctx.x()));
                Jet acc(0.0);
                for (size_t a = 0; a < dim; ++a)
                  for (size_t b = 0; b < dim; ++b) {
                    if (a == b) continue;  // Luv(e,e) vanishes
                    Jet l = inner(jmul(basis[a], bx[b]) - jmul(basis[b], bx[a]), ctx.pi());
                    const double mu = ctx.mu();
                    if (mu != 0.0) {
                      const double sign = variant == GenVariant::FlipSMuSign ? 1.0 : -1.0;
                      l += (sign * mu * 0.5) * itr_comm(ctx.x(), basis[a], basis[b]) /
                           trace(ctx.x());
                    }
                    acc += l * l;
                  }
                return 0.5 * acc;
              }};
    }
    case GenKind::A2: {
      auto basis = lifted_onb(desc);
      return {label, [basis, e, variant](const JetContext& ctx) {
                Jet acc(-1.0);
                const Jet Xe = eval_X(ctx, e, variant);
                const Jet Ye = eval_Y(ctx, e);
                const Jet ratio = Xe / Ye;
                for (const auto& ea : basis) {
                  const Jet A =
                      0.5 * (eval_X(ctx, ea, variant) - eval_Y(ctx, ea) * ratio) +
                      eval_Y(ctx, ea) / Ye;
                  acc += A * A;
                }
                return acc;
              }};
    }
  }
  throw_usage("unknown generator kind");
}

Observable gen_X(const Element<double>& u, double mu, GenVariant variant) {
  return compile({GenKind::X, u, std::nullopt}, mu, u.desc, variant);
}
Observable gen_Y(const Element<double>& u) {
  return compile({GenKind::Y, u, std::nullopt}, 0.0, u.desc);
}
Observable gen_S(const Element<double>& u, const Element<double>& v, double mu,
                 GenVariant variant) {
  return compile({GenKind::S, u, v}, mu, u.desc, variant);
}
Observable gen_L(const Element<double>& u) {
  return compile({GenKind::L, u, std::nullopt}, 0.0, u.desc);
}
Observable gen_Luv(const Element<double>& u, const Element<double>& v, double mu,
                   GenVariant variant) {
  return compile({GenKind::Luv, u, v}, mu, u.desc, variant);
}
Observable hamiltonian(const AlgebraDescriptor& desc, double mu, GenVariant variant) {
  return compile({GenKind::Ham, std::nullopt, std::nullopt}, mu, desc, variant);
}
Observable lrl(const Element<double>& u, double mu, GenVariant variant) {
  return compile({GenKind::LRL, u, std::nullopt}, mu, u.desc, variant);
}
Observable casimir_l2(const AlgebraDescriptor& desc, double mu, GenVariant variant) {
  return compile({GenKind::L2, std::nullopt, std::nullopt}, mu, desc, variant);
}
Observable casimir_a2(const AlgebraDescriptor& desc, double mu, GenVariant variant) {
  return compile({GenKind::A2, std::nullopt, std::nullopt}, mu, desc, variant);
}

}  // namespace ukepler
