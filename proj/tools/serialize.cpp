#include "serialize.hpp"

#include <cmath>

namespace sumsetlab {

namespace {

json num(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json int_set_json(const IntSet &s)
{
    return s.elements();
}

} // namespace

json element_json(const GroupSpec &g, Index x)
{
    if (g.is_cyclic())
        return x;
    return g.coords(x);
}

json set_json(const ElementSet &s)
{
    return {{"group", s.group().to_string()}, {"size", s.size()}, {"support", s.members()}};
}

void to_json(json &j, const Rational &r)
{
    j = r.to_string();
}

void to_json(json &j, const ConstantsConfig &c)
{
    j = {{"C_sample", c.C_sample}, {"C_p", c.C_p},           {"c_eps", c.c_eps},
         {"C_chang", c.C_chang},   {"C_bohr_radius", c.C_bohr_radius}, {"retries", c.retries}};
}

void to_json(json &j, const ProgressionWitness &w)
{
    j = {{"ambient", to_string(w.ambient)}, {"length", w.length}, {"verified", w.verified}};
    if (w.group)
        j["group"] = w.group->to_string();
    switch (w.ambient) {
    case ProgressionWitness::Ambient::integers:
        j["base"] = w.base;
        j["step"] = w.step;
        break;
    case ProgressionWitness::Ambient::cyclic:
        j["base"] = w.base;
        j["step"] = w.step;
        break;
    case ProgressionWitness::Ambient::vector_space: {
        const auto &g = *w.group;
        j["base"] = element_json(g, static_cast<Index>(w.base));
        j["dimension"] = w.dimension();
        json basis = json::array();
        for (auto b : w.basis)
            basis.push_back(element_json(g, b));
        j["basis"] = basis;
        break;
    }
    }
}

void to_json(json &j, const BohrDescriptor &b)
{
    json freqs = json::array();
    for (auto r : b.frequencies())
        freqs.push_back(element_json(b.group(), r));
    j = {{"group", b.group().to_string()}, {"frequencies", freqs}, {"rank", b.rank()}, {"radius", num(b.delta())}};
}

void to_json(json &j, const PeriodicityReport &r)
{
    j = {{"T", r.T},
         {"T_size", r.t_size},
         {"p", num(r.p)},
         {"epsilon", num(r.epsilon)},
         {"reference_kind", to_string(r.reference_kind)},
         {"reference", num(r.reference)},
         {"max_distance", num(r.max_distance)},
         {"threshold", num(r.epsilon * r.reference)},
         {"samples", r.samples},
         {"pass", r.pass}};
}

void to_json(json &j, const ChangReduction &c)
{
    j = {{"threshold", num(c.threshold)},
         {"gamma_nonprincipal", c.spectrum.size()},
         {"basis", c.basis},
         {"basis_size", c.basis.size()},
         {"certificates", c.certificates},
         {"tau", num(c.tau)},
         {"delta", num(c.delta)},
         {"reduced_radius", num(c.reduced_radius)},
         {"rank_bound", num(c.rank_bound)}};
}

void to_json(json &j, const BootstrapReport &r)
{
    j = {{"periodicity", r.periodicity},
         {"K_A", num(r.k_a)},
         {"K_B", num(r.k_b)},
         {"delta", num(r.delta)},
         {"k", r.k},
         {"k_rule", "ceil(ln(2/delta))"},
         {"X", {{"source", r.oracle_x ? "oracle" : "supplied"}, {"size", r.x_size}, {"tau", num(r.tau)}}},
         {"smoothing_error", num(r.smoothing_error)},
         {"gamma_size", r.gamma_size},
         {"lambda_size", r.chang.basis.size()},
         {"chang", r.chang},
         {"certificates",
          {{"dissociated", r.dissociated}, {"spans", r.spans_verified}, {"containment", r.containment_verified}}},
         {"implied_radius_constant", num(r.implied_radius_constant)}};
}

void to_json(json &j, const ProgressionReport &r)
{
    j = {{"witness", r.witness},
         {"model_witness", r.model_witness},
         {"modulus", r.modulus},
         {"alpha", num(r.alpha)},
         {"beta", num(r.beta)},
         {"K_A", num(r.k_a)},
         {"K_B", num(r.k_b)},
         {"swapped", r.swapped},
         {"epsilon", num(r.epsilon)},
         {"p", num(r.p)},
         {"P_found", r.found_length},
         {"P_cap_exp", r.cap_exp},
         {"P_cap_certified", r.cap_certified},
         {"attempts", r.attempts},
         {"shrinks", r.shrinks},
         {"attempt_seed", r.attempt_seed},
         {"holder", {{"lhs", num(r.holder_lhs)}, {"rhs", num(r.holder_rhs)}, {"ok", r.holder_ok}}}};
    if (r.periodicity)
        j["periodicity"] = *r.periodicity;
    if (r.bootstrap)
        j["bootstrap"] = *r.bootstrap;
    if (r.embedding)
        j["embedding"] = *r.embedding;
    if (!r.subset.empty()) {
        j["subset"] = r.subset;
        j["subset_bound"] = num(r.subset_bound);
    }
}

void to_json(json &j, const BogolyubovReport &r)
{
    j = {{"bootstrap", r.bootstrap},
         {"K", num(r.k)},
         {"alpha", num(r.alpha)},
         {"T_size", r.t_size},
         {"inequality_failures", r.inequality_failures},
         {"outside", r.outside},
         {"false_containments", r.false_containments},
         {"contained", r.contained},
         {"max_deviation", num(r.max_deviation)},
         {"radius", num(r.radius)},
         {"rank", r.rank},
         {"radius_shape", num(r.radius_shape)},
         {"rank_shape", num(r.rank_shape)}};
}

void to_json(json &j, const LongestAp &a)
{
    j = {{"length", a.length}, {"step", a.step}, {"base", a.base}};
}

void to_json(json &j, const BoundTable &t)
{
    json rows = json::array();
    for (const auto &r : t.rows)
        rows.push_back({{"alpha", num(r.alpha)},
                        {"beta", num(r.beta)},
                        {"N", num(r.n)},
                        {"K_A", num(r.k_a)},
                        {"K_B", num(r.k_b)},
                        {"green", {{"log", num(r.log_green)}, {"value", num(std::exp(r.log_green))}}},
                        {"improved", {{"log", num(r.log_improved)}, {"value", num(std::exp(r.log_improved))}}},
                        {"doubling", {{"log", num(r.log_doubling)}, {"value", num(std::exp(r.log_doubling))}}},
                        {"radius", {{"delta", num(r.radius_delta)}, {"rank", num(r.radius_rank)}, {"value", num(r.radius)}}},
                        {"improved_exceeds_green", r.improved_exceeds_green}});
    json cross = json::array();
    for (const auto &c : t.crossovers) {
        json e = {{"beta", num(c.beta)}, {"N", num(c.n)}};
        e["alpha_min"] = c.alpha_min ? num(*c.alpha_min) : json(nullptr);
        e["alpha_max"] = c.alpha_max ? num(*c.alpha_max) : json(nullptr);
        cross.push_back(e);
    }
    j = {{"rows", rows}, {"crossovers", cross}};
}

void to_json(json &j, const XiChoice &c)
{
    j = {{"xi", c.xi},
         {"modulus", c.modulus},
         {"D_size", c.d_size},
         {"interval_count", c.interval_count},
         {"excluded_total", c.excluded_total},
         {"excluded_union", num(c.excluded_union)},
         {"gap", {c.gap_lo, c.gap_hi}}};
}

void to_json(json &j, const IsoCheck &c)
{
    j = {{"ok", c.ok},
         {"exhaustive", c.exhaustive},
         {"forward_integer", c.forward_integer},
         {"well_defined", c.well_defined},
         {"tuple_count", num(c.tuple_count)},
         {"states", c.states}};
    if (c.counterexample)
        j["counterexample"] = {{"direction", c.counterexample->direction},
                               {"lhs", c.counterexample->lhs},
                               {"rhs", c.counterexample->rhs}};
}

void to_json(json &j, const EmbeddingCertificate &c)
{
    json subsets = json::array();
    for (const auto &s : c.subsets)
        subsets.push_back(int_set_json(s));
    json phi = json::array();
    for (const auto &[a, v] : c.phi)
        phi.push_back({a, v});
    j = {{"choice", c.choice}, {"k", c.k},         {"modulus", c.modulus}, {"bands", c.bands},
         {"band_sizes", c.band_sizes}, {"subsets", subsets}, {"phi", phi},          {"check", c.check},
         {"verified", c.verified}};
}

void to_json(json &j, const SampleReport &r)
{
    j = {{"k", r.k},
         {"sigma", r.sigma},
         {"lp_error", num(r.lp_error)},
         {"epsilon", num(r.epsilon)},
         {"p", num(r.p)},
         {"seed", r.seed},
         {"rng_id", r.rng_id},
         {"part_scale", num(r.part_scale)}};
}

void to_json(json &j, const FailureReport &r)
{
    j = {{"trials", r.trials},
         {"failures", r.failures},
         {"rate", num(r.rate)},
         {"k", r.k},
         {"mean_error", num(r.mean_error)},
         {"max_error", num(r.max_error)}};
}

} // namespace sumsetlab
