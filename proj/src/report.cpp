#include "kepoly/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "kepoly/catalog.hpp"

namespace kepoly::cli {

nlohmann::ordered_json rational_json(const Rat& q) {
    return {{"exact", rat_to_string(q)}, {"approx", rat_to_decimal(q)}};
}

nlohmann::ordered_json vector_json(const QVec& v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Rat& c : v.c) arr.push_back(rational_json(c));
    return arr;
}

nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json j;
    j["tool"] = "kepoly";
    j["subcommand"] = subcommand;
    j["input"] = input;
    j["group"]["rank"] = rs.rank;
    j["group"]["semisimple_rank"] = rs.semisimple_rank;
    j["group"]["positive_roots"] = rs.positive_roots.size();
    j["group"]["two_rho_alpha"] = vector_json(roots::to_alpha_coordinates(rs, rs.two_rho));
    j["dh"]["volume"] = rational_json(dh.volume);
    j["dh"]["barycenter_alpha"] = vector_json(dh.barycenter_alpha);
    j["dh"]["barycenter_realization"] = vector_json(dh.barycenter);
    if (ke) {
        j["ke"]["verdict"] = criterion::to_string(ke->verdict);
        nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
        for (const Rat& c : ke->cone_coeffs) coeffs.push_back(rational_json(c));
        j["ke"]["cone_coeffs"] = coeffs;
        j["ke"]["toric_residual"] = vector_json(ke->toric_residual);
        j["ke"]["shifted"] = vector_json(ke->shifted);
    }
    if (rlb) {
        j["rlb"]["R"] = rational_json(rlb->R);
        j["rlb"]["s_star"] =
            rlb->s_unbounded ? nlohmann::ordered_json("unbounded") : rational_json(*rlb->s_star);
        j["rlb"]["point_A"] = vector_json(rlb->point_A);
        j["rlb"]["point_B"] = vector_json(rlb->point_B);
        if (rlb->point_C) j["rlb"]["point_C"] = vector_json(*rlb->point_C);
        if (rlb->ratio_BC_AC) j["rlb"]["ratio_BC_AC"] = rational_json(*rlb->ratio_BC_AC);
        j["rlb"]["hypothesis_met"] = rlb->hypothesis_met;
        if (!rlb->note.empty()) j["rlb"]["note"] = rlb->note;
    }
    if (!residuals.empty()) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const ResidualRow& r : residuals) {
            nlohmann::ordered_json row;
            row["name"] = r.name;
            row["value"] = r.value;
            row["tolerance"] = r.tolerance;
            row["converged"] = r.converged;
            row["pass"] = r.pass;
            rows.push_back(row);
        }
        j["residuals"] = rows;
    }
    return j;
}

std::string Report::to_text(double elapsed_ms) const {
    std::ostringstream out;
    out << "kepoly " << subcommand << "\n";
    out << "  group: rank " << rs.rank << ", " << rs.positive_roots.size() << " positive roots\n";
    out << "  DH volume        " << rat_to_string(dh.volume) << " (" << rat_to_decimal(dh.volume)
        << ")\n";
    out << "  barycenter (alpha coords)\n";
    for (const Rat& c : dh.barycenter_alpha.c)
        out << "    " << rat_to_string(c) << " (" << rat_to_decimal(c) << ")\n";
    if (ke) {
        out << "  verdict          " << criterion::to_string(ke->verdict) << "\n";
        out << "  cone coefficients";
        for (const Rat& c : ke->cone_coeffs) out << " " << rat_to_string(c);
        out << "\n";
        if (!ke->toric_residual.is_zero())
            out << "  toric residual   " << to_string(ke->toric_residual) << "\n";
    }
    if (rlb) {
        out << "  R(X)             " << rat_to_string(rlb->R) << " (" << rat_to_decimal(rlb->R)
            << ")\n";
        out << "  s*               "
            << (rlb->s_unbounded ? std::string("unbounded") : rat_to_string(*rlb->s_star)) << "\n";
        if (rlb->ratio_BC_AC)
            out << "  |BC|/|AC|        " << rat_to_string(*rlb->ratio_BC_AC) << "\n";
        if (!rlb->note.empty()) out << "  note: " << rlb->note << "\n";
    }
    if (!residuals.empty()) {
        out << "  residuals\n";
        for (const ResidualRow& r : residuals) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "    %-28s %.3e  (tol %.1e)  %s%s\n", r.name.c_str(),
                          r.value, r.tolerance, r.pass ? "pass" : "FAIL",
                          r.converged ? "" : " [budget]");
            out << buf;
        }
    }
    char tbuf[64];
    std::snprintf(tbuf, sizeof(tbuf), "  elapsed: %.1f ms\n", elapsed_ms);
    out << tbuf;
    return out.str();
}

// ---- verify battery ---------------------------------------------------------

namespace {

// Random interior point with every positive-root pairing in [0.2, 2.5] (away
// from the walls and from the nearly singular 2x2 block regime), and with the
// potential's exponent gap between the largest and the (rank+1)-th largest
// generator below 10, so the covariance block stays numerically nonsingular.
Eigen::VectorXd random_chamber_point(const roots::RootSystem& rs, const analytic::TestPotential& u,
                                     std::mt19937_64& rng) {
    std::uniform_real_distribution<double> box(-4.0, 4.0);
    Eigen::MatrixXd forms(static_cast<int>(rs.positive_roots.size()), rs.rank);
    for (size_t k = 0; k < rs.positive_roots.size(); ++k) {
        QVec f = rs.pairing_form(rs.positive_roots[k]);
        for (int i = 0; i < rs.rank; ++i) forms(static_cast<int>(k), i) = f[i].get_d();
    }
    for (;;) {
        Eigen::VectorXd x(rs.rank);
        for (int i = 0; i < rs.rank; ++i) x[i] = box(rng);
        if (!rs.positive_roots.empty()) {
            Eigen::VectorXd t = forms * x;
            if (!(t.minCoeff() > 0.2 && t.maxCoeff() < 2.5)) continue;
        }
        Eigen::VectorXd e = u.exponents(x);
        std::vector<double> sorted(e.data(), e.data() + e.size());
        std::sort(sorted.rbegin(), sorted.rend());
        size_t kth = std::min(static_cast<size_t>(rs.rank), sorted.size() - 1);
        if (sorted[0] - sorted[kth] < 10.0) return x;
    }
}

}  // namespace

std::vector<ResidualRow> run_verify_battery(const roots::RootSystem& rs,
                                            const geom::RationalPolytope& pplus,
                                            const geom::RationalPolytope& p_full,
                                            analytic::QuadratureSpec quad) {
    std::vector<ResidualRow> rows;
    const bool rank1 = rs.rank == 1;
    const double tol_push = rank1 ? 1e-6 : 1e-3;
    const double tol_zero = rank1 ? 1e-4 : 1e-3;
    const double tol_bar = rank1 ? 1e-4 : 1e-3;

    analytic::TestPotential u = analytic::build_test_potential(rs, p_full);

    auto add = [&rows](const std::string& name, const analytic::CheckResult& c, double tol) {
        rows.push_back({name, c.residual, tol, c.within_budget, c.residual <= tol});
    };

    add("pushforward_identity", analytic::check_pushforward_identity(rs, pplus, u, quad), tol_push);

    if (!rs.two_rho.is_zero()) {
        QVec rho = Rat(1, 2) * rs.two_rho;
        add("zero_integral[rho]", analytic::check_zero_integral(rs, u, rho, quad), tol_zero);
    }
    for (size_t t = 0; t < rs.toric_basis.size(); ++t)
        add("zero_integral[e" + std::to_string(t + 1) + "]",
            analytic::check_zero_integral(rs, u, rs.toric_basis[t], quad), tol_zero);

    for (size_t i = 0; i < rs.simple_roots.size(); ++i)
        add("barycenter_identity[alpha" + std::to_string(i + 1) + "]",
            analytic::check_barycenter_identity(rs, pplus, u, rs.simple_roots[i], quad), tol_bar);
    for (size_t t = 0; t < rs.toric_basis.size(); ++t)
        add("barycenter_identity[e" + std::to_string(t + 1) + "]",
            analytic::check_barycenter_identity(rs, pplus, u, rs.toric_basis[t], quad), tol_bar);

    // Monge-Ampere cross-check: block determinant against the closed form, on
    // the test potential at random interior points.
    {
        std::mt19937_64 rng(20240811);
        double worst = 0;
        for (int k = 0; k < 100; ++k) {
            Eigen::VectorXd x = random_chamber_point(rs, u, rng);
            double direct = analytic::ma_complex_direct(rs, u, x);
            double closed = analytic::ma_complex(rs, u, x);
            double denom = std::max(std::abs(closed), 1e-300);
            worst = std::max(worst, std::abs(direct - closed) / denom);
        }
        rows.push_back({"ma_complex_cross_check", worst, 1e-10, true, worst <= 1e-10});
    }

    if (!rs.positive_roots.empty()) {
        // Finite-difference checks of the j derivatives.
        std::mt19937_64 rng(987654);
        double worst_g = 0, worst_h = 0;
        const double h = 1e-4;
        for (int k = 0; k < 100; ++k) {
            Eigen::VectorXd x = random_chamber_point(rs, u, rng);
            Eigen::VectorXd g = analytic::j_gradient(rs, x);
            Eigen::MatrixXd H = analytic::j_hessian(rs, x);
            for (int i = 0; i < rs.rank; ++i) {
                Eigen::VectorXd xp = x, xm = x;
                xp[i] += h;
                xm[i] -= h;
                double fd = (analytic::j_value(rs, xp) - analytic::j_value(rs, xm)) / (2 * h);
                worst_g = std::max(worst_g, std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i])));
                Eigen::VectorXd gfd =
                    (analytic::j_gradient(rs, xp) - analytic::j_gradient(rs, xm)) / (2 * h);
                for (int jc = 0; jc < rs.rank; ++jc)
                    worst_h = std::max(worst_h,
                                       std::abs(gfd[jc] - H(i, jc)) / std::max(1.0, std::abs(H(i, jc))));
            }
        }
        rows.push_back({"j_gradient_fd", worst_g, 1e-6, true, worst_g <= 1e-6});
        rows.push_back({"j_hessian_fd", worst_h, 1e-6, true, worst_h <= 1e-6});

        analytic::JInequalityReport jr = analytic::check_j_inequalities(rs, 1000, 13579);
        double violation = std::max(0.0, -jr.worst_bound_margin);
        if (jr.worst_gradient_margin <= 0) violation = std::max(violation, 1.0);
        rows.push_back({"j_inequalities", violation, 1e-9, true, jr.ok});
    }
    return rows;
}

// ---- figure -----------------------------------------------------------------

namespace {

std::string dec(const Rat& q) { return rat_to_decimal(q); }
std::string dec(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

struct FigureData {
    std::vector<std::pair<QVec, std::string>> points;  // kind:label -> handled below
    std::vector<std::array<std::string, 4>> rows;      // kind,x,y,label
};

FigureData figure_data(const roots::RootSystem& rs, const geom::RationalPolytope& pplus,
                       const dh::DHResult& dhres, const std::optional<criterion::RLBResult>& rlb) {
    FigureData f;
    auto row = [&f](const std::string& kind, const QVec& p, const std::string& label) {
        f.rows.push_back({kind, dec(p[0]), dec(p[1]), label});
        f.points.push_back({p, kind});
    };
    int i = 0;
    for (const QVec& v : pplus.vertices) row("pplus_vertex", v, "v" + std::to_string(i++));
    row("two_rho", rs.two_rho, "2rho");
    row("barycenter", dhres.barycenter, "bar_DH");

    // Dashed rays bounding 2rho + Xi, drawn from 2rho along each simple root.
    Rat reach(0);
    for (const QVec& v : pplus.vertices)
        for (const Rat& c : v.c) {
            Rat a = c < 0 ? -c : c;
            if (a > reach) reach = a;
        }
    reach = Rat(2) * reach + Rat(1);
    int k = 1;
    for (const QVec& alpha : rs.simple_roots) {
        QVec end = rs.two_rho + reach * alpha;
        row("xi_ray", end, "alpha" + std::to_string(k++));
    }
    if (rlb) {
        row("point_A", rlb->point_A, "A");
        row("point_B", rlb->point_B, "B");
        if (rlb->point_C) row("point_C", *rlb->point_C, "C");
    }
    return f;
}

}  // namespace

std::string figure_csv(const roots::RootSystem& rs, const geom::RationalPolytope& pplus,
                       const dh::DHResult& dhres, const std::optional<criterion::RLBResult>& rlb) {
    FigureData f = figure_data(rs, pplus, dhres, rlb);
    std::ostringstream out;
    out << "kind,x,y,label\n";
    for (const auto& r : f.rows) out << r[0] << "," << r[1] << "," << r[2] << "," << r[3] << "\n";
    return out.str();
}

std::string figure_svg(const roots::RootSystem& rs, const geom::RationalPolytope& pplus,
                       const dh::DHResult& dhres, const std::optional<criterion::RLBResult>& rlb) {
    FigureData f = figure_data(rs, pplus, dhres, rlb);

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& pr : f.points) {
        double x = pr.first[0].get_d(), y = pr.first[1].get_d();
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    double span = std::max(xmax - xmin, ymax - ymin);
    double pad = 0.08 * span;
    xmin -= pad, ymin -= pad, xmax += pad, ymax += pad;
    const double W = 520;
    double sc = W / std::max(xmax - xmin, ymax - ymin);
    auto X = [&](const QVec& p) { return (p[0].get_d() - xmin) * sc; };
    auto Y = [&](const QVec& p) { return (ymax - p[1].get_d()) * sc; };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << dec(W) << "\" height=\"" << dec(W)
      << "\" viewBox=\"0 0 " << dec(W) << " " << dec(W) << "\">\n";
    s << "<polygon points=\"";
    {
        // Vertices in boundary order: sort by angle about the centroid.
        double cx = 0, cy = 0;
        for (const QVec& v : pplus.vertices) {
            cx += v[0].get_d();
            cy += v[1].get_d();
        }
        cx /= static_cast<double>(pplus.vertices.size());
        cy /= static_cast<double>(pplus.vertices.size());
        std::vector<std::pair<double, const QVec*>> ang;
        for (const QVec& v : pplus.vertices)
            ang.push_back({std::atan2(v[1].get_d() - cy, v[0].get_d() - cx), &v});
        std::sort(ang.begin(), ang.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [a, v] : ang) s << dec(X(*v)) << "," << dec(Y(*v)) << " ";
    }
    s << "\" fill=\"#eef\" stroke=\"#336\" stroke-width=\"1.5\"/>\n";

    for (const auto& [p, kind] : f.points) {
        if (kind == "xi_ray") {
            s << "<line x1=\"" << dec(X(rs.two_rho)) << "\" y1=\"" << dec(Y(rs.two_rho))
              << "\" x2=\"" << dec(X(p)) << "\" y2=\"" << dec(Y(p))
              << "\" stroke=\"#888\" stroke-dasharray=\"6,4\"/>\n";
        }
    }
    for (const auto& r : f.rows) {
        if (r[0] == "xi_ray") continue;
        double px = (std::stod(r[1]) - xmin) * sc;
        double py = (ymax - std::stod(r[2])) * sc;
        const char* color = r[0] == "barycenter" || r[0] == "point_A" ? "#c22"
                            : r[0] == "two_rho" || r[0] == "point_B"  ? "#22c"
                            : r[0] == "point_C"                       ? "#282"
                                                                      : "#333";
        s << "<circle cx=\"" << dec(px) << "\" cy=\"" << dec(py) << "\" r=\"3.5\" fill=\"" << color
          << "\"/>\n";
        s << "<text x=\"" << dec(px + 5) << "\" y=\"" << dec(py - 5)
          << "\" font-size=\"11\" fill=\"" << color << "\">" << r[3] << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

// ---- command driver -----------------------------------------------------------

namespace {

struct CommonOpts {
    std::string config_path;
    std::string builtin_name;
    bool json = false;
};

Config load_config(const CommonOpts& o) {
    if (!o.builtin_name.empty() && !o.config_path.empty())
        throw ConfigError("(args)", "--config and --builtin are mutually exclusive");
    if (!o.builtin_name.empty()) return config_for_builtin(o.builtin_name);
    if (!o.config_path.empty()) return parse_config_file(o.config_path);
    throw ConfigError("(args)", "one of --config or --builtin is required");
}

int emit(const Report& rep, bool json, double ms) {
    if (json)
        std::cout << rep.to_json().dump(2) << "\n";
    else
        std::cout << rep.to_text(ms);
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Kahler-Einstein criterion and greatest Ricci lower bound for Fano group "
                 "compactifications, from exact polytope data"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string csv_path, svg_path, catalog_name;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "JSON config file");
        cmd->add_option("--builtin", opts.builtin_name, "built-in example name");
        cmd->add_flag("--json", opts.json, "emit a JSON report");
    };

    CLI::App* c_check = app.add_subcommand("check", "decide existence of a Kahler-Einstein metric");
    CLI::App* c_rlb = app.add_subcommand("rlb", "compute the greatest Ricci lower bound R(X)");
    CLI::App* c_bar = app.add_subcommand("barycenter", "Duistermaat-Heckman volume and barycenter");
    CLI::App* c_verify =
        app.add_subcommand("verify", "numerically verify the integral identities on this input");
    CLI::App* c_figure = app.add_subcommand("figure", "emit CSV/SVG of the rank-2 picture");
    CLI::App* c_catalog = app.add_subcommand("catalog", "list or dump built-in examples");
    for (CLI::App* c : {c_check, c_rlb, c_bar, c_verify, c_figure}) add_common(c);
    c_figure->add_option("--csv", csv_path, "write CSV here (default: stdout)");
    c_figure->add_option("--svg", svg_path, "also write an SVG rendering");
    c_catalog->add_option("name", catalog_name, "example to dump");
    c_catalog->add_flag("--json", opts.json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto started = std::chrono::steady_clock::now();
    auto elapsed_ms = [&started] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    };

    try {
        if (c_catalog->parsed()) {
            if (catalog_name.empty()) {
                if (opts.json) {
                    nlohmann::ordered_json j = catalog::builtin_names();
                    std::cout << j.dump(2) << "\n";
                } else {
                    for (const std::string& n : catalog::builtin_names()) std::cout << n << "\n";
                }
                return 0;
            }
            catalog::NamedExample ex = catalog::builtin(catalog_name);
            nlohmann::ordered_json j;
            j["name"] = ex.name;
            j["group"]["factors"] = ex.group.factors;
            j["group"]["torus_rank"] = ex.group.torus_rank;
            nlohmann::ordered_json verts = nlohmann::ordered_json::array();
            for (const QVec& v : ex.pplus_vertices_alpha) {
                std::vector<std::string> comps;
                for (const Rat& c : v.c) comps.push_back(rat_to_string(c));
                verts.push_back(comps);
            }
            j["pplus_vertices"] = verts;
            j["coordinates"] = "simple_roots";
            j["provenance"] = ex.provenance;
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        Config cfg = load_config(opts);
        const bool need_full = c_verify->parsed();
        Realization real = realize(cfg, need_full);

        Report rep;
        rep.input = cfg.echo;
        rep.rs = real.rs;
        rep.dh = dh::dh_barycenter(real.rs, real.pplus);

        if (c_bar->parsed()) {
            rep.subcommand = "barycenter";
            return emit(rep, opts.json, elapsed_ms());
        }
        if (c_check->parsed()) {
            rep.subcommand = "check";
            rep.ke = criterion::ke_verdict(real.rs, real.pplus);
            emit(rep, opts.json, elapsed_ms());
            switch (rep.ke->verdict) {
                case criterion::Verdict::KE_EXISTS: return 0;
                case criterion::Verdict::NO_KE: return 3;
                case criterion::Verdict::BOUNDARY: return 4;
            }
        }
        if (c_rlb->parsed()) {
            rep.subcommand = "rlb";
            rep.ke = criterion::ke_verdict(real.rs, real.pplus);
            rep.rlb = criterion::greatest_ricci_lower_bound(real.rs, real.pplus);
            return emit(rep, opts.json, elapsed_ms());
        }
        if (c_verify->parsed()) {
            rep.subcommand = "verify";
            rep.ke = criterion::ke_verdict(real.rs, real.pplus);
            rep.residuals = run_verify_battery(real.rs, real.pplus, *real.p_full, cfg.quad);
            emit(rep, opts.json, elapsed_ms());
            for (const ResidualRow& r : rep.residuals)
                if (!r.pass) return 1;
            return 0;
        }
        if (c_figure->parsed()) {
            if (real.rs.rank != 2)
                throw std::invalid_argument("figure: only rank-2 data can be drawn");
            std::optional<criterion::RLBResult> rlb =
                criterion::greatest_ricci_lower_bound(real.rs, real.pplus);
            std::string csv = figure_csv(real.rs, real.pplus, rep.dh, rlb);
            if (csv_path.empty()) {
                std::cout << csv;
            } else {
                std::ofstream out(csv_path);
                if (!out) throw std::runtime_error("cannot write '" + csv_path + "'");
                out << csv;
            }
            if (!svg_path.empty()) {
                std::ofstream out(svg_path);
                if (!out) throw std::runtime_error("cannot write '" + svg_path + "'");
                out << figure_svg(real.rs, real.pplus, rep.dh, rlb);
            }
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace kepoly::cli
