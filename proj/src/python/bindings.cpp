#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pathspace/cocycles.hpp"
#include "pathspace/declog.hpp"
#include "pathspace/fock.hpp"
#include "pathspace/io.hpp"
#include "pathspace/linalg.hpp"
#include "pathspace/product.hpp"

namespace py = pybind11;
using namespace pathspace;

namespace {

// Paths built from Python share one grid per step size.
constexpr int kGridPoints = 1 << 20;

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

// 1-D arrays are one-dimensional paths; 2-D arrays are (cells, dim).
StepPath path_from_array(double step, const CArray& a) {
    if (a.ndim() != 1 && a.ndim() != 2)
        throw Error("path array must be 1-D or 2-D");
    const auto cells = static_cast<int>(a.shape(0));
    const int dim = a.ndim() == 2 ? static_cast<int>(a.shape(1)) : 1;
    if (cells < 1)
        throw Error("path array is empty");
    std::vector<cplx> v(a.data(), a.data() + a.size());
    return StepPath(TimeGrid(step, std::max(cells, kGridPoints)), dim, std::move(v));
}

CArray path_to_array(const StepPath& p) {
    CArray out({static_cast<py::ssize_t>(p.cells()), static_cast<py::ssize_t>(p.dim())});
    std::copy(p.values().begin(), p.values().end(), out.mutable_data());
    return out;
}

std::vector<StepPath> paths(double step, const std::vector<CArray>& arrays) {
    std::vector<StepPath> out;
    out.reserve(arrays.size());
    for (const auto& a : arrays)
        out.push_back(path_from_array(step, a));
    return out;
}

}  // namespace

PYBIND11_MODULE(_pathspace, m) {
    m.doc() = "Discretized path spaces, additive forms and decomposable product systems";

    py::register_exception<Error>(m, "PathspaceError", PyExc_ValueError);

    py::class_<StepPath>(m, "StepPath")
        .def(py::init(&path_from_array), py::arg("step"), py::arg("values"))
        .def_property_readonly("step", [](const StepPath& p) { return p.grid().step(); })
        .def_property_readonly("cells", &StepPath::cells)
        .def_property_readonly("dim", &StepPath::dim)
        .def_property_readonly("length", &StepPath::length)
        .def("values", &path_to_array)
        .def("__eq__", [](const StepPath& a, const StepPath& b) { return a == b; })
        .def("__repr__", [](const StepPath& p) {
            return "<StepPath cells=" + std::to_string(p.cells()) + " dim=" + std::to_string(p.dim()) + ">";
        });

    m.def("concat_box", &concat_box, py::arg("f"), py::arg("g"));
    m.def("propagator", &propagator, py::arg("x"), py::arg("r"), py::arg("s"));
    m.def("l2_inner", &l2_inner, py::arg("a"), py::arg("b"));

    py::class_<AdditiveForm>(m, "AdditiveForm")
        .def_static("inner", &AdditiveForm::inner)
        .def_static("gaussian", &AdditiveForm::gaussian, py::arg("c"))
        .def_static("poisson", &AdditiveForm::poisson, py::arg("c"), py::arg("h0"))
        .def_property_readonly("kind", [](const AdditiveForm& f) { return to_string(f.kind()); })
        .def("__call__", [](const AdditiveForm& f, const StepPath& x, const StepPath& y) { return f(x, y); });

    m.def("eval_form", &eval_form, py::arg("form"), py::arg("x"), py::arg("y"));
    m.def("gram", [](const AdditiveForm& f, const std::vector<StepPath>& s) { return gram(f, s); },
          py::arg("form"), py::arg("samples"));
    m.def("cpd_check", [](const AdditiveForm& f, const std::vector<StepPath>& s) { return cpd_check(f, s); },
          py::arg("form"), py::arg("samples"));
    m.def("pd_root_check",
          [](const AdditiveForm& f, const std::vector<StepPath>& s, const std::vector<double>& roots) {
              return pd_root_check(f, s, roots);
          },
          py::arg("form"), py::arg("samples"), py::arg("roots"));
    m.def("min_eigenvalue", &min_eigenvalue, py::arg("matrix"));

    m.def("cocycle1_residual",
          [](const StepPath& f, int count) { return cocycle1_residual(CocycleFamily::difference(f, count)); },
          py::arg("f"), py::arg("count"), "Residual of the coboundary family of f.");
    m.def("solve_cocycle1",
          [](double step, const std::vector<CArray>& members, double tol) {
              auto ms = paths(step, members);
              const int d = ms.front().dim();
              const CocycleFamily fam(ms.front().grid(), d, CocycleConvention::ForwardTranslate, std::move(ms));
              return solve_cocycle1(fam, tol);
          },
          py::arg("step"), py::arg("members"), py::arg("tol") = kDefaultTol,
          "Primitive of a forward-translate family given as phi_h, phi_2h, ...");
    m.def("trivialize_section",
          [](const StepPath& section, double tol, cplx anchor) {
              const auto table = gamma_of_section(PathSection(section));
              const auto tr = trivialize_gamma_full(table, tol, anchor);
              py::dict out;
              std::vector<CArray> phi;
              for (const auto& p : tr.phi.members())
                  phi.push_back(path_to_array(p));
              out["phi"] = phi;
              out["w"] = path_to_array(tr.w);
              out["residual"] = tr.residual;
              out["cocycle2_residual"] = cocycle2_residual(table);
              return out;
          },
          py::arg("section"), py::arg("tol") = kDefaultTol, py::arg("anchor") = cplx(0.0),
          "Gamma table of the coherent section, trivialized.");
    m.def("trivialize_multiplier",
          [](double step, int horizon, const std::function<cplx(double, double)>& c, double tol) {
              const auto table = MultiplierTable::tabulate(TimeGrid(step, horizon), horizon, c);
              return trivialize_multiplier(table, tol);
          },
          py::arg("step"), py::arg("horizon"), py::arg("c"), py::arg("tol") = kDefaultTol);

    m.def("exp_gram", [](const std::vector<StepPath>& fs) { return exp_gram(fs); }, py::arg("paths"));
    m.def("trunc_exp",
          [](const std::vector<cplx>& xi, int n) {
              const auto v = trunc_exp(xi, n);
              return py::make_tuple(v.norm_sq(), v.tail_bound(), io::to_json(v).dump());
          },
          py::arg("xi"), py::arg("max_degree"), "(norm_sq, tail_bound, json) of the truncated exponential.");

    py::class_<DecompVector>(m, "DecompVector")
        .def(py::init<cplx, StepPath>(), py::arg("scalar"), py::arg("path"))
        .def_readonly("scalar", &DecompVector::lambda)
        .def_readonly("path", &DecompVector::f)
        .def("__mul__", &dv_multiply);
    m.def("dv_inner", &dv_inner, py::arg("u"), py::arg("v"));

    py::class_<DecompSection>(m, "DecompSection")
        .def(py::init<StepPath>(), py::arg("path"))
        .def_static("reference", py::overload_cast<const StepPath&>(&DecompSection::reference), py::arg("eps"))
        .def_static("vacuum",
                    [](double step, int cells, int dim) {
                        return DecompSection::vacuum(TimeGrid(step, kGridPoints), cells, dim);
                    },
                    py::arg("step"), py::arg("cells"), py::arg("dim") = 1)
        .def("at", &DecompSection::at, py::arg("cells"))
        .def("normalized", &de_normalize, py::arg("reference"))
        .def_property_readonly("horizon", &DecompSection::horizon);

    m.def("le_branch", &le_branch, py::arg("x"), py::arg("y"), py::arg("e"), py::arg("max_refine") = 4);
    m.def("model_log_oracle", &model_log_oracle, py::arg("x"), py::arg("y"), py::arg("e"));
    m.def("B_limit",
          [](const DecompVector& x, const DecompVector& y, const DecompSection& e, int levels) {
              const auto r = B_limit(x, y, e, levels);
              std::vector<py::tuple> rows;
              for (const auto& row : r.table)
                  rows.push_back(py::make_tuple(row.level, row.pieces, row.mesh, row.value, row.gap));
              return py::make_tuple(r.estimate, r.oracle, rows);
          },
          py::arg("x"), py::arg("y"), py::arg("e"), py::arg("levels"),
          "(estimate, oracle, [(level, pieces, mesh, value, gap)]).");
    m.def("lemma911",
          [](const std::vector<std::vector<cplx>>& net, cplx zeta) {
              const auto r = lemma911(net, zeta);
              std::vector<py::tuple> rows;
              for (const auto& row : r.rows)
                  rows.push_back(py::make_tuple(row.product, row.gap, row.bound));
              return py::make_tuple(rows, r.within_bound);
          },
          py::arg("net"), py::arg("zeta"));
}
