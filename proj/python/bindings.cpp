#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pgn/app.hpp"
#include "pgn/errors.hpp"
#include "pgn/io.hpp"

namespace py = pybind11;
using namespace pgn;

namespace {

std::vector<Rational> rationals(const std::vector<std::string>& xs) {
    std::vector<Rational> out;
    for (const auto& s : xs) out.push_back(parse_rational(s));
    return out;
}

std::vector<ExtendedRational> extended(const std::vector<std::string>& xs) {
    std::vector<ExtendedRational> out;
    for (const auto& s : xs) out.push_back(parse_extended(s));
    return out;
}

std::string construct(int n, const std::string& gamma, const std::vector<std::string>& tau, const std::string& delta,
                      int blocks, bool strict) {
    ConstructionParams p;
    p.n = n;
    p.gamma = parse_rational(gamma);
    p.tau = extended(tau);
    p.delta = parse_rational(delta);
    p.blocks = blocks;
    p.strict = strict;
    Construction c = assemble(p);
    Json j{{"system", to_json(c.system)}, {"diagnostics", to_json(system_diagnostics(c), c)}};
    return j.dump();
}

std::string validate(const std::string& system_json) {
    return to_json(validate_roy(roy_from_json(Json::parse(system_json)))).dump();
}

std::string block(const std::string& params_json) {
    BlockParams p = block_params_from_json(Json::parse(params_json));
    Block b = build_block(p);
    return to_json(b, block_extrema(b, p)).dump();
}

std::string profile_rows(const std::vector<std::string>& x, const std::vector<std::string>& q_grid, unsigned threads) {
    auto xs = rationals(x);
    return profile_csv(profile(static_cast<int>(xs.size()), xs, rationals(q_grid), kDefaultBudget, threads));
}

std::string classify(const std::string& csv, int d) {
    Profile p = profile_from_csv(csv);
    TailStats s = bad_sing_stat(p, d);
    return Json{{"verdict", verdict_name(s.verdict)}, {"tail", to_json(s)}}.dump();
}

std::string tau_check(int n, const std::vector<std::string>& tau) { return to_json(validate_tau(n, extended(tau))).dump(); }

std::string transference(int n, const std::vector<std::string>& omega) {
    return to_json(transference_check(n, extended(omega))).dump();
}

std::string dirichlet(const std::vector<std::string>& x, int d, const std::string& N) {
    return to_json(dirichlet_search(rationals(x), d, parse_rational(N))).dump();
}

std::string subspace(const std::vector<std::string>& x, int d, const std::string& h_max) {
    return to_json(best_approx(rationals(x), d, parse_rational(h_max))).dump();
}

py::tuple run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"pgnlab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_pgnlab, m) {
    m.doc() = "Exact parametric geometry of numbers; results are JSON strings";

    py::register_exception<Error>(m, "PgnError");

    m.def("construct", &construct, py::arg("n"), py::arg("gamma"), py::arg("tau"), py::arg("delta") = "0",
          py::arg("blocks") = 6, py::arg("strict") = false);
    m.def("validate", &validate, py::arg("system_json"));
    m.def("block", &block, py::arg("params_json"));
    m.def("profile", &profile_rows, py::arg("x"), py::arg("q_grid"), py::arg("threads") = 0u,
          "Profile CSV text");
    m.def("q_from_t", [](double t) { return to_string(q_from_t(t)); });
    m.def("classify", &classify, py::arg("csv"), py::arg("d") = 0);
    m.def("tau_check", &tau_check, py::arg("n"), py::arg("tau"));
    m.def("transference", &transference, py::arg("n"), py::arg("omega"));
    m.def("dirichlet", &dirichlet, py::arg("x"), py::arg("d"), py::arg("N"));
    m.def("subspace", &subspace, py::arg("x"), py::arg("d"), py::arg("h_max"));
    m.def("run", &run_cli, py::arg("args"), "(exit code, stdout, stderr) of the command line tool");
}
