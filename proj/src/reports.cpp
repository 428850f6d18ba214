#include "brstlab/reports.hpp"

#include <json.hpp>

namespace brst {

namespace {

using nlohmann::json;

json outcome_json(const Context& ctx, const SolveOutcome& o)
{
    const Backend& B = ctx.backend();
    json j = {{"seed", B.str(o.seed)}, {"extends", o.extends()}};
    if (o.extension)
        j["extension"] = B.str(*o.extension);
    if (o.obstruction) {
        const Obstruction& ob = *o.obstruction;
        j["obstruction"] = {{"order", ob.order},
                            {"residual", B.str(ob.residual)},
                            {"unsolvable_part", B.str(ob.unsolvable)},
                            {"certificate", ob.certificate},
                            {"genuine", ob.genuine}};
    }
    return j;
}

json verdict_json(const Context& ctx, const VerdictRecord& rec)
{
    json j = {{"verdict", verdict_str(rec.verdict)},
              {"strong_invariance", rec.strongInvariance},
              {"linear", rec.linear},
              {"note", rec.note}};
    if (rec.witness)
        j["witness"] = outcome_json(ctx, *rec.witness);
    return j;
}

struct Cases {
    json list = json::array();
    int pass = 0;
    int fail = 0;

    void add(const std::string& name, bool ok, const std::string& witness = "")
    {
        json c = {{"name", name}, {"status", ok ? "pass" : "fail"}};
        if (!ok && !witness.empty())
            c["witness"] = witness;
        list.push_back(c);
        (ok ? pass : fail)++;
    }
};

json table_json(const Context& ctx, const std::vector<TableEntry>& table)
{
    const Backend& B = ctx.backend();
    json t = json::array();
    for (const auto& e : table)
        t.push_back({{"u", B.str(e.u)}, {"v", B.str(e.v)}, {"product", B.str(e.product)}});
    return t;
}

json vey_json(const VeyReport& v)
{
    json rows = json::array();
    for (const auto& r : v.rows)
        rows.push_back({{"r", r.r}, {"order_first", r.orderFirst}, {"order_second", r.orderSecond}, {"ok", r.ok}});
    json j = {{"rows", rows}, {"ok", v.ok}};
    if (!v.witness.empty())
        j["witness"] = v.witness;
    return j;
}

RunReport finish(json config, json result, const Cases& cases)
{
    json j;
    j["config"] = std::move(config);
    j["result"] = std::move(result);
    j["cases"] = cases.list;
    j["summary"] = {{"pass", cases.pass}, {"fail", cases.fail}};
    return {j.dump(2), cases.fail};
}

} // namespace

RunReport torus_report(const std::string& variant, int order, const std::string& emit, int maxDegree)
{
    if (variant != "standard" && variant != "perturbed")
        throw ConfigError("unknown torus variant '" + variant + "'");
    if (emit != "reduced-table" && emit != "invariants" && emit != "obstruction")
        throw ConfigError("unknown emit target '" + emit + "'");
    if (order < 1 || maxDegree < 0)
        throw ConfigError("order must be positive and max degree non-negative");

    const bool standard = variant == "standard";
    Context ctx = Context::from_specs("", standard ? "torus" : "torus-perturbed");
    std::vector<PhaseFunction> box = invariant_box(ctx, maxDegree);
    VerdictRecord rec = consistency_verdict(ctx, box, order);

    json config = {{"command", "torus"}, {"variant", variant},       {"backend", ctx.backend().name()},
                   {"order", order},     {"emit", emit},             {"max_degree", maxDegree}};
    json result;
    result["box"] = {{"description", "z^a p^m with |a| <= " + std::to_string(maxDegree) +
                                         ", m <= " + std::to_string(maxDegree)},
                     {"size", box.size()}};
    result["verdict"] = verdict_json(ctx, rec);

    Cases cases;
    std::string why;
    bool strong = check_strong_invariance(ctx, function_probes(ctx, 2), order, &why);
    if (standard)
        cases.add("strong invariance", strong, why);
    else
        cases.add("strong invariance fails", !strong, "perturbed star is strongly invariant on the probes");

    if (emit == "reduced-table") {
        result["table"] = table_json(ctx, reduced_table(ctx, maxDegree, order));
    } else if (emit == "invariants") {
        json inv = json::array();
        for (const auto& o : rec.outcomes)
            inv.push_back(outcome_json(ctx, o));
        result["invariants"] = inv;
    } else {
        json obs = json::array();
        for (const auto& o : rec.outcomes)
            if (!o.extends())
                obs.push_back(outcome_json(ctx, o));
        result["obstructions"] = obs;
    }
    return finish(config, result, cases);
}

RunReport reduce_report(const std::string& backend, int order, int maxDegree)
{
    Context ctx = Context::from_specs("", backend);
    if (ctx.backend().kind() != BackendKind::Flat && ctx.backend().kind() != BackendKind::FlatWeyl)
        throw ConfigError("reduce expects a flat backend, got '" + backend + "'");
    if (order < 1 || maxDegree < 0)
        throw ConfigError("order must be positive and max degree non-negative");

    std::vector<PhaseFunction> box = invariant_box(ctx, maxDegree);
    VerdictRecord rec = consistency_verdict(ctx, box, order);
    json config = {{"command", "reduce"}, {"backend", ctx.backend().name()}, {"order", order}, {"max_degree", maxDegree}};
    json result;
    result["box"] = {{"description", "monomials in the unconstrained pairs, every exponent <= " +
                                         std::to_string(maxDegree)},
                     {"size", box.size()}};
    result["verdict"] = verdict_json(ctx, rec);

    Cases cases;
    cases.add("consistent reduction", rec.verdict != Verdict::Fails, rec.note);
    if (rec.verdict != Verdict::Fails) {
        result["table"] = table_json(ctx, reduced_table(ctx, maxDegree, order));
        if (!reduced_vars(ctx).empty()) {
            const int rmax = std::min(order, 4);
            VeyReport vey = vey_order_audit(ctx, order, rmax, rmax + 1);
            result["vey"] = vey_json(vey);
            cases.add("reduced product is of Vey type", vey.ok, vey.witness);
        }
    }
    return finish(config, result, cases);
}

std::string eval_expression(const Context& ctx, const std::string& expr, const std::string& op, int order,
                            const std::string& second, const Scalar& kappa)
{
    SuperField a = parse_field(expr, ctx.backend(), order);
    if (op == "star") {
        if (second.empty())
            throw ConfigError("star needs a second operand");
        return ctx.str(ctx.star(a, parse_field(second, ctx.backend(), order), kappa));
    }
    if (op == "brst0")
        return ctx.str(ctx.brst(a, Scalar(0)));
    if (op == "brstW")
        return ctx.str(ctx.brst(a, Scalar::frac(1, 2)));
    if (op == "koszul")
        return ctx.str(ctx.quant_koszul(a));
    if (op == "ce")
        return ctx.str(ctx.quant_ce(a));
    if (op == "restrict")
        return ctx.str(ctx.deformed_restriction(a));
    throw ConfigError("unknown op '" + op + "'");
}

} // namespace brst
