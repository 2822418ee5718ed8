#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ymlab/cli.hpp"
#include "ymlab/persist.hpp"
#include "ymlab/reduce_verify.hpp"

namespace py = pybind11;
using namespace ymlab;

namespace {

py::dict split_dict(const EnergySplit& s) {
    py::dict d;
    d["total"] = s.total;
    d["e_plus"] = s.e_plus;
    d["e_minus"] = s.e_minus;
    d["q"] = s.q;
    return d;
}

py::object json_to_py(const nlohmann::ordered_json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

std::vector<std::vector<cplx>> matrix_rows(const CMatrix& m) {
    std::vector<std::vector<cplx>> rows(m.dim(), std::vector<cplx>(m.dim()));
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) rows[i][j] = m(i, j);
    return rows;
}

FlowConfig flow_config(double step_init, double tol_force, long max_iters, long measure_every) {
    FlowConfig cfg;
    cfg.step_init = step_init;
    cfg.tol_force = tol_force;
    cfg.max_iters = max_iters;
    cfg.measure_every = measure_every;
    return cfg;
}

py::dict history_dict(const MinimizeReport& rep) {
    py::dict d;
    d["converged"] = rep.converged;
    d["stalled"] = rep.stalled;
    d["iters"] = rep.iters;
    d["energy"] = rep.energy;
    d["force_inf"] = rep.force_inf;
    d["split"] = rep.split ? py::object(split_dict(*rep.split)) : py::none();
    py::list rows;
    for (const auto& r : rep.history) {
        py::dict row;
        row["iter"] = r.iter;
        row["energy"] = r.energy;
        row["e_plus"] = r.e_plus ? py::object(py::float_(*r.e_plus)) : py::none();
        row["e_minus"] = r.e_minus ? py::object(py::float_(*r.e_minus)) : py::none();
        row["q"] = r.q ? py::object(py::float_(*r.q)) : py::none();
        row["force_inf"] = r.force_inf;
        row["step"] = r.step;
        rows.append(row);
    }
    d["history"] = rows;
    return d;
}

}  // namespace

PYBIND11_MODULE(_ymlab, m) {
    m.doc() = "Lattice Yang-Mills minimizer and structure diagnostics";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<SnapshotError>(m, "SnapshotError", PyExc_ValueError);

    py::enum_<GroupKind>(m, "GroupKind")
        .value("U1", GroupKind::U1)
        .value("SU2", GroupKind::SU2)
        .value("SU3", GroupKind::SU3);
    m.def("parse_group_kind", [](const std::string& s) { return parse_group_kind(s); });

    py::class_<LatticeGeometry>(m, "LatticeGeometry")
        .def(py::init<int, std::vector<int>, double>(), py::arg("dim"), py::arg("extents"), py::arg("spacing") = 1.0)
        .def_property_readonly("dim", &LatticeGeometry::dim)
        .def_property_readonly("extents", &LatticeGeometry::extents)
        .def_property_readonly("volume", &LatticeGeometry::volume)
        .def_property_readonly("num_links", &LatticeGeometry::num_links)
        .def("coords", [](const LatticeGeometry& g, SiteIndex x) {
            const Coords c = g.coords(x);
            return std::vector<int>(c.begin(), c.begin() + g.dim());
        })
        .def("index", [](const LatticeGeometry& g, const std::vector<int>& c) {
            Coords k{};
            for (std::size_t i = 0; i < c.size() && i < 4; ++i) k[i] = c[i];
            return g.index(k);
        })
        .def("shift", &LatticeGeometry::shift);

    py::class_<LinkField>(m, "LinkField")
        .def_property_readonly("geometry", &LinkField::geometry)
        .def_property_readonly("kind", &LinkField::kind)
        .def("link", [](const LinkField& u, SiteIndex x, int mu) { return matrix_rows(u(x, mu).matrix()); },
             py::arg("site"), py::arg("mu"))
        .def("max_unitarity_defect", &LinkField::max_unitarity_defect)
        .def("__eq__", [](const LinkField& a, const LinkField& b) { return a == b; });

    m.def("cold_start", &cold_start, py::arg("geometry"), py::arg("kind"));
    m.def("hot_start", &hot_start, py::arg("geometry"), py::arg("kind"), py::arg("seed"), py::arg("amplitude"));
    m.def("abelian_flux_start", &abelian_flux_start, py::arg("geometry"), py::arg("n"),
          "n is a 4x4 antisymmetric integer matrix of flux quanta");
    m.def("gauge_transform", [](const LinkField& u, std::uint64_t seed, double amplitude) {
        return apply_gauge(u, random_gauge(u.geometry(), u.kind(), seed, amplitude));
    }, py::arg("field"), py::arg("seed"), py::arg("amplitude") = 3.0);

    m.def("wilson_energy", &wilson_energy);
    m.def("force_inf", [](const LinkField& u) { return force(u).sup_norm(); });
    m.def("energy_split", [](const LinkField& u) { return split_dict(energy_split(u)); });
    m.def("topological_charge", py::overload_cast<const LinkField&>(&topological_charge));
    m.def("plaquette", [](const LinkField& u, SiteIndex x, int mu, int nu) {
        return matrix_rows(plaquette(u, x, mu, nu).matrix());
    });

    m.def("minimize", [](const LinkField& u, double step_init, double tol_force, long max_iters, long measure_every) {
        auto [field, rep] = minimize(u, flow_config(step_init, tol_force, max_iters, measure_every));
        return py::make_tuple(field, history_dict(rep));
    }, py::arg("field"), py::arg("step_init") = 0.05, py::arg("tol_force") = 1e-8, py::arg("max_iters") = 200000,
       py::arg("measure_every") = 100);

    m.def("run_diagnostics", [](const LinkField& u) { return json_to_py(to_json(run_diagnostics(u))); });
    m.def("second_variation", [](const LinkField& u, std::uint64_t seed, double amplitude, double h) {
        const OneFormField psi = random_variation(u.geometry(), u.kind(), seed, amplitude);
        return json_to_py(to_json(second_variation(u, psi, h, "random:" + std::to_string(seed))));
    }, py::arg("field"), py::arg("seed"), py::arg("amplitude") = 1.0, py::arg("h") = 1e-4);
    m.def("killing_variation", [](const LinkField& u, int mu, const std::string& sign, double h) {
        if (sign != "+" && sign != "-") throw py::value_error("sign must be '+' or '-'");
        const Duality s = sign == "+" ? Duality::SelfDual : Duality::AntiSelfDual;
        const OneFormField psi = build_killing_variation(clover(u), mu - 1, s);
        return json_to_py(to_json(second_variation(u, psi, h, "killing:" + std::to_string(mu) + sign)));
    }, py::arg("field"), py::arg("mu"), py::arg("sign"), py::arg("h") = 1e-4, "mu is 1-based");

    m.def("hodge_star", [](const std::array<double, 6>& c) { return hodge_star(TwoForm<double>(c)).components(); },
          "Hodge star of a scalar 2-form given in plane order 12, 13, 14, 23, 24, 34");
    m.def("project_pm", [](const std::array<double, 6>& c, const std::string& sign) {
        if (sign != "+" && sign != "-") throw py::value_error("sign must be '+' or '-'");
        return project_pm(TwoForm<double>(c), sign == "+" ? Duality::SelfDual : Duality::AntiSelfDual).components();
    });

    m.def("save_snapshot", &save_snapshot);
    m.def("load_snapshot", &load_snapshot);
    m.def("encode_snapshot", [](const LinkField& u) {
        const auto b = encode_snapshot(u);
        return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
    });
    m.def("decode_snapshot", [](const py::bytes& data) {
        const std::string s = data;
        return decode_snapshot(std::vector<std::uint8_t>(s.begin(), s.end()));
    });

    m.def("canonical_config", [](const std::string& text) { return canonical_config(parse_config(text)); });
    m.def("config_hash", [](const std::string& text) { return config_hash(parse_config(text)); });

    m.def("verify_forces_zero", [](long n, int samples, std::uint64_t seed, bool ablate) {
        const VerificationReport r = verify_forces_zero(n, samples, seed, ablate ? kWithoutRelations : kAllRows);
        py::dict d;
        d["N"] = r.n;
        d["pass"] = r.pass;
        d["rank_consistent"] = r.rank_consistent;
        d["elapsed_ms"] = r.elapsed_ms;
        py::list rows;
        for (const auto& s : r.samples) {
            py::dict row;
            std::vector<std::string> u;
            for (const auto& c : s.u) u.push_back(to_string(c));
            row["u"] = u;
            row["rank"] = s.rank;
            row["kernel_dim"] = s.kernel_dim;
            row["pass"] = s.pass;
            rows.append(row);
        }
        d["samples"] = rows;
        return d;
    }, py::arg("n"), py::arg("samples") = 5, py::arg("seed") = 1, py::arg("ablate") = false);

    m.def("sphere_moment", [](const std::vector<int>& alpha, int n) { return to_string(sphere_moment(alpha, n)); },
          py::arg("alpha"), py::arg("n"), "Exact average as a 'p/q' string");

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, "Runs the command-line interface in-process; returns (exit_code, stdout, stderr)");
}
