#include "brstlab/brstlab.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace {

int report_error(brst_status st)
{
    std::cerr << "brstlab: " << brst_status_name(st) << " error: " << brst_last_error() << "\n";
    return 2;
}

/// prints or writes the owned string, frees it, returns the exit code
int deliver(char* text, int failures, const std::string& out)
{
    std::string s = text ? text : "";
    brst_string_free(text);
    if (!s.empty() && s.back() != '\n')
        s += '\n';
    if (out.empty() || out == "-") {
        std::cout << s;
    } else {
        std::ofstream f(out);
        if (!f) {
            std::cerr << "brstlab: cannot write " << out << "\n";
            return 2;
        }
        f << s;
    }
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact BRST reduction toolkit over Q(i)[[lambda]]"};
    app.require_subcommand(1);

    // verify
    std::string suite = "all", lie, backend = "torus", format = "text";
    int order = 4, samples = 20;
    uint64_t seed = 1;
    auto* verify = app.add_subcommand("verify", "run an identity suite on random samples");
    verify->add_option("--suite", suite)
        ->check(CLI::IsMember({"all", "grassmann", "liealg", "backend", "brst", "homotopy", "classical"}));
    verify->add_option("--lie", lie, "abelian:<k> | su2 | aff1 | @file.json (default: abelian matching the backend)");
    verify->add_option("--backend", backend, "torus | torus-perturbed | flat:<d>,<k> | flat-weyl:<d>,<k> | point");
    verify->add_option("--order", order)->check(CLI::Range(1, 12));
    verify->add_option("--samples", samples)->check(CLI::Range(1, 100000));
    verify->add_option("--seed", seed);
    verify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    // torus
    std::string variant = "standard", emit = "reduced-table", out;
    int torusOrder = 5, maxDegree = 3;
    auto* torus = app.add_subcommand("torus", "reduction on T*T^2 by the second circle");
    torus->add_option("--variant", variant)->check(CLI::IsMember({"standard", "perturbed"}));
    torus->add_option("--order", torusOrder)->check(CLI::Range(1, 12));
    torus->add_option("--emit", emit)->check(CLI::IsMember({"reduced-table", "invariants", "obstruction"}));
    torus->add_option("--max-degree", maxDegree)->check(CLI::Range(0, 8));
    torus->add_option("--out", out, "output file (default stdout)");

    // reduce
    std::string flatBackend = "flat:2,1", reduceFormat = "json", reduceOut;
    int reduceOrder = 4, reduceDegree = 2;
    auto* reduce = app.add_subcommand("reduce", "reduction of flat R^2d by translations");
    reduce->add_option("--backend", flatBackend, "flat:<d>,<k> | flat-weyl:<d>,<k>");
    reduce->add_option("--order", reduceOrder)->check(CLI::Range(1, 12));
    reduce->add_option("--max-degree", reduceDegree)->check(CLI::Range(0, 6));
    reduce->add_option("--format", reduceFormat)->check(CLI::IsMember({"json"}));
    reduce->add_option("--out", reduceOut, "output file (default stdout)");

    // eval
    std::vector<std::string> exprs;
    std::string op = "brst0", evalBackend = "torus", evalLie, kappa = "0";
    int evalOrder = 3;
    auto* eval = app.add_subcommand("eval", "apply one operator to a parsed field");
    eval->add_option("--expr", exprs, "field expression; give twice for star")->required();
    eval->add_option("--op", op)->check(CLI::IsMember({"star", "brst0", "brstW", "koszul", "ce", "restrict"}));
    eval->add_option("--backend", evalBackend);
    eval->add_option("--lie", evalLie);
    eval->add_option("--order", evalOrder)->check(CLI::Range(0, 12));
    eval->add_option("--kappa", kappa, "ordering parameter for star");

    CLI11_PARSE(app, argc, argv);

    if (*verify) {
        char* rep = nullptr;
        int failures = 0;
        brst_status st =
            brst_verify(suite.c_str(), lie.c_str(), backend.c_str(), order, samples, seed, format == "json", &rep,
                        &failures);
        if (st != BRST_OK)
            return report_error(st);
        return deliver(rep, failures, "");
    }
    if (*torus) {
        char* rep = nullptr;
        int failures = 0;
        brst_status st = brst_torus_report(variant.c_str(), torusOrder, emit.c_str(), maxDegree, &rep, &failures);
        if (st != BRST_OK)
            return report_error(st);
        return deliver(rep, failures, out);
    }
    if (*reduce) {
        char* rep = nullptr;
        int failures = 0;
        brst_status st = brst_reduce(flatBackend.c_str(), reduceOrder, reduceDegree, &rep, &failures);
        if (st != BRST_OK)
            return report_error(st);
        return deliver(rep, failures, reduceOut);
    }
    if (*eval) {
        if (exprs.size() > 2 || (op == "star") != (exprs.size() == 2)) {
            std::cerr << "brstlab: star takes two --expr values, other ops take one\n";
            return 2;
        }
        brst_context* ctx = nullptr;
        brst_status st = brst_context_create(evalLie.c_str(), evalBackend.c_str(), &ctx);
        if (st != BRST_OK)
            return report_error(st);
        char* res = nullptr;
        st = brst_eval(ctx, exprs[0].c_str(), exprs.size() == 2 ? exprs[1].c_str() : nullptr, op.c_str(),
                       kappa.c_str(), evalOrder, &res);
        brst_context_destroy(ctx);
        if (st != BRST_OK)
            return report_error(st);
        return deliver(res, 0, "");
    }
    return 0;
}
