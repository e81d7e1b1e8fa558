#include "pathspace/io.hpp"

#include <charconv>
#include <sstream>

namespace pathspace::io {

std::string format_double(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

namespace {

json cplx_json(cplx c) { return json::array({c.real(), c.imag()}); }

cplx cplx_from(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw Error("expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = b + s.size();
    while (b < e && *b == ' ')
        ++b;
    auto r = std::from_chars(b, e, v);
    if (r.ec != std::errc())
        throw Error("not a number: '" + s + "'");
    return v;
}

}  // namespace

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                out += ',';
            out += quote(cells[i]);
        }
        out += "\r\n";
    };
    line(header);
    for (const auto& r : rows)
        line(r);
    return out;
}

json to_json(const StepPath& p) {
    json cells = json::array();
    for (cplx c : p.values())
        cells.push_back(cplx_json(c));
    return {{"h", p.grid().step()}, {"d", p.dim()}, {"n_max", p.grid().n_max()}, {"cells", cells}};
}

StepPath path_from_json(const json& j) {
    try {
        const double h = j.at("h").get<double>();
        const int d = j.at("d").get<int>();
        std::vector<cplx> v;
        for (const auto& c : j.at("cells"))
            v.push_back(cplx_from(c));
        if (d < 1 || v.size() % static_cast<std::size_t>(d) != 0)
            throw Error("path: cell count is not a multiple of d");
        const int cells = static_cast<int>(v.size()) / d;
        const int n_max = j.contains("n_max") ? j["n_max"].get<int>() : std::max(cells, 2);
        return StepPath(TimeGrid(h, n_max), d, std::move(v));
    } catch (const json::exception& e) {
        throw Error(std::string("path: malformed JSON (") + e.what() + ")");
    }
}

std::string to_csv(const StepPath& p) {
    std::vector<std::string> header{"k"};
    for (int i = 0; i < p.dim(); ++i) {
        header.push_back("re_" + std::to_string(i));
        header.push_back("im_" + std::to_string(i));
    }
    std::vector<std::vector<std::string>> rows;
    for (int k = 0; k < p.cells(); ++k) {
        std::vector<std::string> r{std::to_string(k + 1)};
        for (cplx c : p.cell(k)) {
            r.push_back(format_double(c.real()));
            r.push_back(format_double(c.imag()));
        }
        rows.push_back(std::move(r));
    }
    return csv_table(header, rows);
}

StepPath path_from_csv(const std::string& text, double step) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw Error("path CSV: empty input");
    int cols = 0;
    for (char c : line)
        cols += c == ',';
    if (cols < 2 || cols % 2 != 0)
        throw Error("path CSV: bad header");
    const int d = cols / 2;
    std::vector<cplx> v;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            f.push_back(cell);
        if (static_cast<int>(f.size()) != cols + 1)
            throw Error("path CSV: wrong column count");
        for (int i = 0; i < d; ++i)
            v.emplace_back(parse_double(f[1 + 2 * i]), parse_double(f[2 + 2 * i]));
    }
    const int cells = static_cast<int>(v.size()) / d;
    return StepPath(TimeGrid(step, std::max(cells, 2)), d, std::move(v));
}

json to_json(const AdditiveForm& f) {
    json params = json::object();
    switch (f.kind()) {
    case FormKind::Gaussian:
        params["c"] = f.c();
        break;
    case FormKind::Poisson:
        params["c"] = f.c();
        params["h0"] = f.h0();
        break;
    case FormKind::GammaKernel: {
        const auto& t = *f.table();
        json vals = json::array();
        for (Eigen::Index i = 0; i < t.values().rows(); ++i) {
            json row = json::array();
            for (Eigen::Index k = 0; k < t.values().cols(); ++k)
                row.push_back(cplx_json(t.values()(i, k)));
            vals.push_back(row);
        }
        params["xs"] = t.xs();
        params["ys"] = t.ys();
        params["values"] = vals;
        break;
    }
    case FormKind::Custom:
        params["name"] = f.name();
        break;
    case FormKind::Inner:
        break;
    }
    return {{"kind", to_string(f.kind())}, {"params", params}};
}

AdditiveForm form_from_json(const json& j) {
    try {
        const FormKind k = form_kind_from_string(j.at("kind").get<std::string>());
        const json p = j.value("params", json::object());
        switch (k) {
        case FormKind::Inner:
            return AdditiveForm::inner();
        case FormKind::Gaussian:
            return AdditiveForm::gaussian(p.value("c", 1.0));
        case FormKind::Poisson:
            return AdditiveForm::poisson(p.value("c", 1.0), p.value("h0", 1.0));
        case FormKind::GammaKernel: {
            auto xs = p.at("xs").get<std::vector<double>>();
            auto ys = p.at("ys").get<std::vector<double>>();
            Matrix m(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(ys.size()));
            const auto& vals = p.at("values");
            for (std::size_t i = 0; i < xs.size(); ++i)
                for (std::size_t l = 0; l < ys.size(); ++l)
                    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) = cplx_from(vals.at(i).at(l));
            return AdditiveForm::gamma(std::make_shared<const KernelTable>(std::move(xs), std::move(ys), std::move(m)));
        }
        case FormKind::Custom:
            break;
        }
        throw Error("form: custom forms cannot be deserialized");
    } catch (const json::exception& e) {
        throw Error(std::string("form: malformed JSON (") + e.what() + ")");
    }
}

std::string gram_to_csv(const Matrix& g, std::span<const std::string> labels) {
    if (static_cast<Eigen::Index>(labels.size()) != g.cols())
        throw Error("gram_to_csv: one label per column required");
    std::vector<std::string> header{"row"};
    for (const auto& l : labels) {
        header.push_back(l + ".re");
        header.push_back(l + ".im");
    }
    std::vector<std::vector<std::string>> rows;
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        std::vector<std::string> r{i < static_cast<Eigen::Index>(labels.size()) ? labels[static_cast<std::size_t>(i)]
                                                                                  : std::to_string(i)};
        for (Eigen::Index k = 0; k < g.cols(); ++k) {
            r.push_back(format_double(g(i, k).real()));
            r.push_back(format_double(g(i, k).imag()));
        }
        rows.push_back(std::move(r));
    }
    return csv_table(header, rows);
}

namespace {

json cells_json(const StepPath& p) {
    json cells = json::array();
    for (cplx c : p.values())
        cells.push_back(cplx_json(c));
    return cells;
}

}  // namespace

json to_json(const CocycleFamily& f) {
    json members = json::array();
    for (int t = 1; t <= f.count(); ++t)
        members.push_back({{"t", f.grid().time(t)}, {"cells", cells_json(f.at(t))}});
    return {{"h", f.grid().step()},
            {"d", f.dim()},
            {"n_max", f.grid().n_max()},
            {"convention", f.convention() == CocycleConvention::Shift ? "shift" : "forward"},
            {"members", members}};
}

CocycleFamily cocycle_from_json(const json& j) {
    try {
        const TimeGrid grid(j.at("h").get<double>(), j.at("n_max").get<int>());
        const int d = j.at("d").get<int>();
        const std::string conv = j.at("convention").get<std::string>();
        if (conv != "shift" && conv != "forward")
            throw Error("cocycle: unknown convention '" + conv + "'");
        std::vector<StepPath> members;
        for (const auto& m : j.at("members")) {
            std::vector<cplx> v;
            for (const auto& c : m.at("cells"))
                v.push_back(cplx_from(c));
            members.emplace_back(grid, d, std::move(v));
        }
        return CocycleFamily(grid, d, conv == "shift" ? CocycleConvention::Shift : CocycleConvention::ForwardTranslate,
                             std::move(members));
    } catch (const json::exception& e) {
        throw Error(std::string("cocycle: malformed JSON (") + e.what() + ")");
    }
}

json to_json(const GammaTable& g) {
    json entries = json::array();
    for (int s = 1; s < g.horizon(); ++s)
        for (int t = 1; s + t <= g.horizon(); ++t)
            entries.push_back({{"s", g.grid().time(s)}, {"t", g.grid().time(t)}, {"cells", cells_json(g.at(s, t))}});
    return {{"h", g.grid().step()}, {"d", g.dim()}, {"entries", entries}};
}

json to_json(const TruncFockVector& v) {
    json degrees = json::array();
    for (int n = 0; n <= v.max_degree(); ++n) {
        const auto& b = v.basis(n);
        auto c = v.degree(n);
        for (std::size_t i = 0; i < b.size(); ++i)
            if (c[i] != 0.0)
                degrees.push_back({{"index", b[i]}, {"re", c[i].real()}, {"im", c[i].imag()}});
    }
    return {{"d", v.dim()}, {"N", v.max_degree()}, {"tail_bound", v.tail_bound()}, {"degrees", degrees}};
}

TruncFockVector trunc_from_json(const json& j) {
    try {
        TruncFockVector v(j.at("d").get<int>(), j.at("N").get<int>());
        for (const auto& e : j.at("degrees"))
            v.set(e.at("index").get<std::vector<int>>(), {e.at("re").get<double>(), e.at("im").get<double>()});
        v.set_tail_bound(j.value("tail_bound", 0.0));
        return v;
    } catch (const json::exception& e) {
        throw Error(std::string("fock vector: malformed JSON (") + e.what() + ")");
    }
}

json to_json(const ProductVector& v) {
    json terms = json::array();
    for (const auto& t : v.terms())
        terms.push_back({{"lambda", cplx_json(t.lambda)}, {"path", to_json(t.x)}});
    return {{"t", v.terms().front().x.length()}, {"form", to_json(*v.form())}, {"terms", terms}};
}

json to_json(const DecompSection& x, const DecompSection& reference) {
    json entries = json::array();
    for (int k = 1; k <= x.horizon(); ++k) {
        const DecompVector v = x.at(k);
        entries.push_back({{"t", x.grid().time(k)}, {"lambda", cplx_json(v.lambda)}, {"path", to_json(v.f)}});
    }
    return {{"epsilon", to_json(reference.path())}, {"entries", entries}};
}

std::string convergence_csv(std::span<const ConvergenceRow> rows) {
    std::vector<std::vector<std::string>> out;
    for (const auto& r : rows)
        out.push_back({std::to_string(r.level), std::to_string(r.pieces), format_double(r.mesh),
                       format_double(r.value.real()), format_double(r.value.imag()), format_double(r.gap)});
    return csv_table({"level", "pieces", "mesh", "B_re", "B_im", "gap"}, out);
}

}  // namespace pathspace::io
