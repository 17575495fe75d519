// pullback: command-line front end for the portrait / moebius / hyperbolic /
// gmap / orbit toolkit. One binary, one subcommand per module.
#include <CLI11.hpp>

#include "pullback/dynamics.hpp"
#include "pullback/gmap.hpp"
#include "pullback/hyperbolic.hpp"
#include "pullback/moebius.hpp"
#include "pullback/portrait.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

using namespace pullback;

namespace {

struct Ctx {
    std::string format = "table";
    Tolerances tol{};
    int max_iter = 2000;
    unsigned seed = 1;
    int deck_depth = 8;
};

// JSON numbers always carry 16 significant digits
std::string jnum(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15e", v);
    return buf;
}

std::string gnum(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string jpair(cplx z) {
    return "[" + jnum(z.real()) + "," + jnum(z.imag()) + "]";
}

SpherePoint parse_point(const std::string& s) {
    if (s == "inf" || s == "infinity") return SpherePoint::infinity();
    auto comma = s.find(',');
    try {
        if (comma == std::string::npos)
            return SpherePoint(std::stod(s), 0.0);
        return SpherePoint(std::stod(s.substr(0, comma)),
                           std::stod(s.substr(comma + 1)));
    } catch (const std::exception&) {
        throw CLI::ValidationError("expected re,im or inf, got '" + s + "'");
    }
}

std::pair<int, int> parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos)
        throw CLI::ValidationError("expected lo..hi, got '" + s + "'");
    try {
        return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("expected lo..hi, got '" + s + "'");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GMapFamily make_family(const std::string& name, int k) {
    if (name == "exp-periodic") return GMapFamily::exp_periodic(k);
    if (name == "exp-preperiodic") return GMapFamily::exp_preperiodic(k);
    throw CLI::ValidationError("unknown family '" + name + "'");
}

Portrait portrait_for_family(const GMapFamily& g) {
    Portrait p;
    p.images = g.kind == GMapKind::ExpPeriodic
                   ? std::array<int, 5>{0, 2, 3, 2, 0}
                   : std::array<int, 5>{0, 2, 3, 3, 0};
    p.essential = 4;
    p.singular[1] = p.singular[4] = true;
    p.transcendental = true;
    return p;
}

const char* fp_class_name(FixedPointClass c) {
    switch (c) {
    case FixedPointClass::Repelling: return "repelling";
    case FixedPointClass::Superattracting: return "superattracting";
    default: return "anomalous";
    }
}

const char* cusp_name(int slot) {
    switch (slot) {
    case 0: return "0";
    case 1: return "1";
    default: return "inf";
    }
}

std::string levy_pairs_json(const Portrait& p, const LevyClass& l) {
    std::string out = "[";
    for (int a = 0; a < 2; ++a) {
        if (a) out += ",";
        out += "[\"" + p.labels[l.pairs[a][0]] + "\",\"" +
               p.labels[l.pairs[a][1]] + "\"]";
    }
    return out + "]";
}

std::string images_summary(const Portrait& p) {
    std::string out;
    for (int x = 1; x <= 4; ++x) {
        if (!out.empty()) out += " ";
        if (x == p.essential)
            out += p.labels[x] + ":essential";
        else if (p.images[x])
            out += p.labels[x] + "->" + p.labels[p.images[x]];
        else
            out += p.labels[x] + ":omitted";
    }
    return out;
}

std::string verdict_json(const Portrait& p, const Verdict& v) {
    switch (v.kind) {
    case Verdict::Kind::Realized:
        return "{\"verdict\":\"realized\",\"fixed_point\":" +
               jpair(v.fixed_point.location) +
               ",\"multiplier\":" + jpair(v.fixed_point.multiplier) +
               ",\"abs_multiplier\":" + jnum(std::abs(v.fixed_point.multiplier)) +
               ",\"residual\":" + jnum(v.fixed_point.residual) + "}";
    case Verdict::Kind::Obstructed:
        return std::string("{\"verdict\":\"obstructed\",\"cusp\":\"") +
               cusp_name(v.cusp_slot) +
               "\",\"levy_pairs\":" + levy_pairs_json(p, v.levy) + "}";
    default:
        return "{\"verdict\":\"undecided\",\"reason\":\"" + v.reason + "\"}";
    }
}

std::string verdict_table(const Portrait& p, const Verdict& v) {
    switch (v.kind) {
    case Verdict::Kind::Realized:
        return "realized  fixed point " +
               gnum(v.fixed_point.location.real()) + "," +
               gnum(v.fixed_point.location.imag()) + "  |multiplier| " +
               gnum(std::abs(v.fixed_point.multiplier));
    case Verdict::Kind::Obstructed:
        return std::string("obstructed  cusp ") + cusp_name(v.cusp_slot) +
               "  levy {" + p.labels[v.levy.pairs[0][0]] + "," +
               p.labels[v.levy.pairs[0][1]] + "}|{" +
               p.labels[v.levy.pairs[1][0]] + "," +
               p.labels[v.levy.pairs[1][1]] + "}";
    default: return "undecided  " + v.reason;
    }
}

} // namespace

int main(int argc, char** argv) {
    auto ctx = std::make_shared<Ctx>();
    CLI::App app{"Laboratory for four-point dynamical portraits and their "
                 "moduli-space pullback dynamics"};
    app.require_subcommand(1);
    app.fallthrough(true);
    app.set_config("--config", "", "TOML-style key=value configuration file");
    app.add_option("--format", ctx->format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->envname("PULLBACK_FORMAT")
        ->capture_default_str();
    app.add_option("--conv", ctx->tol.conv,
                   "Hyperbolic step tolerance for interior convergence")
        ->envname("PULLBACK_CONV")
        ->capture_default_str();
    app.add_option("--fix-tol", ctx->tol.fix, "Fixed point residual tolerance")
        ->envname("PULLBACK_FIX_TOL")
        ->capture_default_str();
    app.add_option("--cusp-tol", ctx->tol.cusp,
                   "Chordal distance tolerance for cusp convergence")
        ->envname("PULLBACK_CUSP_TOL")
        ->capture_default_str();
    app.add_option("--window", ctx->tol.window,
                   "Consecutive iterations a termination criterion must hold")
        ->envname("PULLBACK_WINDOW")
        ->capture_default_str();
    app.add_option("--max-iter", ctx->max_iter, "Iteration budget per orbit")
        ->envname("PULLBACK_MAX_ITER")
        ->capture_default_str();
    app.add_option("--seed", ctx->seed, "RNG seed for campaigns")
        ->envname("PULLBACK_SEED")
        ->capture_default_str();
    app.add_option("--deck-depth", ctx->deck_depth,
                   "Deck transformation search depth for sigma distances")
        ->envname("PULLBACK_DECK_DEPTH")
        ->capture_default_str();

    // ---- portrait ----------------------------------------------------
    auto* sc_portrait = app.add_subcommand("portrait", "Dynamical portraits");
    sc_portrait->require_subcommand(1);

    {
        auto file = std::make_shared<std::string>();
        auto* c = sc_portrait->add_subcommand("check", "Validate a portrait");
        c->add_option("file", *file, "Portrait JSON file")->required();
        c->callback([ctx, file] {
            Portrait p = portrait_from_json(read_file(*file));
            ValidationReport rep = validate(p);
            if (ctx->format == "json") {
                std::string out = "{\"valid\":";
                out += rep.valid() ? "true" : "false";
                out += ",\"problems\":[";
                for (size_t i = 0; i < rep.problems.size(); ++i) {
                    if (i) out += ",";
                    out += "\"" + rep.problems[i] + "\"";
                }
                std::cout << out << "]}\n";
            } else {
                if (rep.valid())
                    std::cout << "valid\n";
                else
                    for (const auto& pr : rep.problems)
                        std::cout << "invalid: " << pr << "\n";
            }
        });
    }
    {
        auto file = std::make_shared<std::string>();
        auto* c = sc_portrait->add_subcommand(
            "bsets", "List admissible three-point subsets");
        c->add_option("file", *file, "Portrait JSON file")->required();
        c->callback([ctx, file] {
            Portrait p = portrait_from_json(read_file(*file));
            auto bs = find_b_sets(p);
            if (ctx->format == "json") {
                std::string out = "{\"bsets\":[";
                for (size_t i = 0; i < bs.size(); ++i) {
                    if (i) out += ",";
                    out += "{\"members\":[";
                    for (int q = 0; q < 3; ++q)
                        out += std::string(q ? "," : "") + "\"" +
                               p.labels[bs[i].members[q]] + "\"";
                    out += "],\"cset\":[";
                    for (int q = 0; q < 3; ++q)
                        out += std::string(q ? "," : "") + "\"" +
                               p.labels[bs[i].cset[q]] + "\"";
                    out += "],\"i\":" + std::to_string(bs[i].i) +
                           ",\"j\":" + std::to_string(bs[i].j) + "}";
                }
                std::cout << out << "]}\n";
            } else {
                for (const auto& b : bs) {
                    std::cout << "B={";
                    for (int q = 0; q < 3; ++q)
                        std::cout << (q ? "," : "") << p.labels[b.members[q]];
                    std::cout << "} C={";
                    for (int q = 0; q < 3; ++q)
                        std::cout << (q ? "," : "") << p.labels[b.cset[q]];
                    std::cout << "} i=" << b.i << " j=" << b.j << "\n";
                }
            }
        });
    }
    {
        auto file = std::make_shared<std::string>();
        auto* c = sc_portrait->add_subcommand(
            "unobstructed", "Total unobstructedness criterion");
        c->add_option("file", *file, "Portrait JSON file")->required();
        c->callback([ctx, file] {
            Portrait p = portrait_from_json(read_file(*file));
            auto res = totally_unobstructed(p);
            if (ctx->format == "json") {
                std::string out = "{\"totally_unobstructed\":";
                out += res.totally_unobstructed ? "true" : "false";
                if (res.witness)
                    out += ",\"witness\":[\"" + p.labels[(*res.witness)[0]] +
                           "\",\"" + p.labels[(*res.witness)[1]] + "\"]";
                std::cout << out << "}\n";
            } else if (res.totally_unobstructed) {
                std::cout << "totally unobstructed\n";
            } else {
                std::cout << "not totally unobstructed; witness {"
                          << p.labels[(*res.witness)[0]] << ","
                          << p.labels[(*res.witness)[1]] << "}\n";
            }
        });
    }
    {
        auto family = std::make_shared<std::string>();
        auto* c = sc_portrait->add_subcommand("enumerate",
                                              "Enumerate a portrait family");
        c->add_option("--family", *family, "entire3 or exponential")
            ->required();
        c->callback([ctx, family] {
            auto eps = enumerate_portraits(family_preset(*family));
            int with_ii = 0;
            for (const auto& ep : eps)
                if (ep.condition_ii) ++with_ii;
            if (ctx->format == "json") {
                std::string out = "{\"family\":\"" + *family + "\",\"count\":" +
                                  std::to_string(eps.size()) +
                                  ",\"condition_ii_count\":" +
                                  std::to_string(with_ii) + ",\"portraits\":[";
                for (size_t i = 0; i < eps.size(); ++i) {
                    if (i) out += ",";
                    out += "{\"portrait\":" +
                           portrait_to_json(eps[i].portrait) +
                           ",\"condition_ii\":";
                    out += eps[i].condition_ii ? "true" : "false";
                    out += "}";
                }
                std::cout << out << "]}\n";
            } else {
                for (const auto& ep : eps)
                    std::cout << (ep.condition_ii ? "[II] " : "     ")
                              << images_summary(ep.portrait) << "\n";
                std::cout << eps.size() << " portraits, " << with_ii
                          << " satisfy condition (II)\n";
            }
        });
    }

    // ---- moebius -----------------------------------------------------
    auto* sc_moebius = app.add_subcommand("moebius", "Connecting maps");
    sc_moebius->require_subcommand(1);
    {
        auto ij = std::make_shared<std::pair<int, int>>();
        auto* c = sc_moebius->add_subcommand(
            "mij", "Connecting map between three-point normalizations");
        c->add_option("--i", ij->first, "Index dropped on the target side")
            ->required()
            ->check(CLI::Range(1, 4));
        c->add_option("--j", ij->second, "Index dropped on the source side")
            ->required()
            ->check(CLI::Range(1, 4));
        c->callback([ctx, ij] {
            Moebius m = connecting_map(ij->first, ij->second);
            std::string formula = moebius_formula(m);
            const SpherePoint pts[3] = {SpherePoint(0.0, 0.0),
                                        SpherePoint(1.0, 0.0),
                                        SpherePoint::infinity()};
            const char* names[3] = {"0", "1", "inf"};
            if (ctx->format == "json") {
                std::string out = "{\"i\":" + std::to_string(ij->first) +
                                  ",\"j\":" + std::to_string(ij->second) +
                                  ",\"formula\":\"" + formula +
                                  "\",\"images\":{";
                for (int q = 0; q < 3; ++q) {
                    if (q) out += ",";
                    out += std::string("\"") + names[q] + "\":\"" +
                           format_sphere_point(m.apply(pts[q])) + "\"";
                }
                std::cout << out << "}}\n";
            } else {
                std::cout << formula << "\n";
                for (int q = 0; q < 3; ++q)
                    std::cout << names[q] << " -> "
                              << format_sphere_point(m.apply(pts[q])) << "\n";
            }
        });
    }

    // ---- hyp ---------------------------------------------------------
    auto* sc_hyp = app.add_subcommand("hyp", "Hyperbolic geometry numerics");
    sc_hyp->require_subcommand(1);
    {
        struct Args {
            std::string model;
            std::string z, w;
        };
        auto a = std::make_shared<Args>();
        auto* c = sc_hyp->add_subcommand("dist", "Hyperbolic distance");
        c->add_option("--model", a->model, "upper, disk, punctured or sigma")
            ->required()
            ->check(CLI::IsMember({"upper", "disk", "punctured", "sigma"}));
        c->add_option("z", a->z, "First point, re,im")->required();
        c->add_option("w", a->w, "Second point, re,im")->required();
        c->callback([ctx, a] {
            cplx z = parse_point(a->z).finite();
            cplx w = parse_point(a->w).finite();
            double d;
            if (a->model == "sigma") {
                d = dist_sigma(z, w, ctx->deck_depth);
            } else {
                Model m = a->model == "upper" ? Model::UpperHalfPlane
                          : a->model == "disk" ? Model::UnitDisk
                                               : Model::PuncturedDisk;
                d = distance(HPoint{z, m}, HPoint{w, m});
            }
            if (ctx->format == "json")
                std::cout << "{\"model\":\"" << a->model
                          << "\",\"distance\":" << jnum(d) << "}\n";
            else
                std::cout << gnum(d) << "\n";
        });
    }
    {
        auto tau = std::make_shared<std::string>();
        auto* c = sc_hyp->add_subcommand("lambda", "Modular lambda function");
        c->add_option("tau", *tau, "Point of the upper half plane, re,im")
            ->required();
        c->callback([ctx, tau] {
            cplx t = parse_point(*tau).finite();
            cplx l = modular_lambda(t);
            if (ctx->format == "json")
                std::cout << "{\"tau\":" << jpair(t)
                          << ",\"lambda\":" << jpair(l) << "}\n";
            else
                std::cout << gnum(l.real()) << "," << gnum(l.imag()) << "\n";
        });
    }
    {
        auto s = std::make_shared<double>();
        auto* c = sc_hyp->add_subcommand(
            "bound", "Inclusion contraction factor bound");
        c->add_option("--s", *s, "Hyperbolic distance to the removed set")
            ->required();
        c->callback([ctx, s] {
            double v = contraction_bound(*s);
            if (ctx->format == "json")
                std::cout << "{\"s\":" << jnum(*s) << ",\"bound\":" << jnum(v)
                          << "}\n";
            else
                std::cout << gnum(v) << "\n";
        });
    }
    {
        auto d0 = std::make_shared<double>();
        auto* c = sc_hyp->add_subcommand(
            "threshold", "Annulus modulus certifying a fixed curve class");
        c->add_option("--d0", *d0, "Distance offset")->required();
        c->callback([ctx, d0] {
            double v = levy_modulus_threshold(*d0);
            if (ctx->format == "json")
                std::cout << "{\"d0\":" << jnum(*d0)
                          << ",\"threshold\":" << jnum(v) << "}\n";
            else
                std::cout << gnum(v) << "\n";
        });
    }

    // ---- gmap --------------------------------------------------------
    auto* sc_gmap = app.add_subcommand("gmap", "Moduli-space map families");
    sc_gmap->require_subcommand(1);
    {
        struct Args {
            std::string family = "exp-periodic";
            int k = 1;
            double radius = 50.0;
            int grid = 120;
        };
        auto a = std::make_shared<Args>();
        auto* c = sc_gmap->add_subcommand("fixed-points",
                                          "Grid-seeded fixed point search");
        c->add_option("--family", a->family, "exp-periodic or exp-preperiodic")
            ->capture_default_str();
        c->add_option("--k", a->k, "Family parameter")->capture_default_str();
        c->add_option("--radius", a->radius, "Search radius")
            ->capture_default_str();
        c->add_option("--grid", a->grid, "Seed lattice resolution")
            ->capture_default_str();
        c->callback([ctx, a] {
            auto g = make_family(a->family, a->k);
            auto fps = find_fixed_points(g, a->radius, a->grid);
            if (ctx->format == "json") {
                std::string out =
                    "{\"count\":" + std::to_string(fps.size()) +
                    ",\"fixed_points\":[";
                for (size_t i = 0; i < fps.size(); ++i) {
                    if (i) out += ",";
                    out += "{\"location\":" + jpair(fps[i].location) +
                           ",\"multiplier\":" + jpair(fps[i].multiplier) +
                           ",\"abs_multiplier\":" +
                           jnum(std::abs(fps[i].multiplier)) +
                           ",\"class\":\"" +
                           fp_class_name(fps[i].classification) +
                           "\",\"residual\":" + jnum(fps[i].residual) + "}";
                }
                std::cout << out << "]}\n";
            } else {
                std::cout << "re,im,mult_re,mult_im,abs_mult,class\n";
                for (const auto& r : fps)
                    std::cout << gnum(r.location.real()) << ","
                              << gnum(r.location.imag()) << ","
                              << gnum(r.multiplier.real()) << ","
                              << gnum(r.multiplier.imag()) << ","
                              << gnum(std::abs(r.multiplier)) << ","
                              << fp_class_name(r.classification) << "\n";
            }
        });
    }
    {
        struct Args {
            std::string family = "exp-periodic";
            int k = 1;
            std::string z;
        };
        auto a = std::make_shared<Args>();
        auto* c = sc_gmap->add_subcommand("eval", "Evaluate the family map");
        c->add_option("--family", a->family, "exp-periodic or exp-preperiodic")
            ->capture_default_str();
        c->add_option("--k", a->k, "Family parameter")->capture_default_str();
        c->add_option("--z", a->z, "Point, re,im or inf")->required();
        c->callback([ctx, a] {
            auto g = make_family(a->family, a->k);
            SpherePoint v = gmap_eval(g, parse_point(a->z));
            if (ctx->format == "json") {
                std::string out = "{\"value\":";
                out += v.infinite ? "\"inf\"" : jpair(v.finite());
                std::cout << out << "}\n";
            } else {
                std::cout << format_sphere_point(v) << "\n";
            }
        });
    }
    {
        struct Args {
            std::string family = "exp-periodic";
            int k = 1;
            int m = 0;
            std::string w;
        };
        auto a = std::make_shared<Args>();
        auto* c = sc_gmap->add_subcommand("branch", "Inverse branch value");
        c->add_option("--family", a->family, "exp-periodic or exp-preperiodic")
            ->capture_default_str();
        c->add_option("--k", a->k, "Family parameter")->capture_default_str();
        c->add_option("--m", a->m, "Branch index")->capture_default_str();
        c->add_option("--w", a->w, "Point, re,im")->required();
        c->callback([ctx, a] {
            auto g = make_family(a->family, a->k);
            SpherePoint v = inverse_branch(g, a->m, parse_point(a->w));
            if (ctx->format == "json")
                std::cout << "{\"value\":" << jpair(v.finite()) << "}\n";
            else
                std::cout << format_sphere_point(v) << "\n";
        });
    }

    // ---- orbit -------------------------------------------------------
    auto* sc_orbit = app.add_subcommand("orbit", "Backward orbit experiments");
    sc_orbit->require_subcommand(1);
    {
        struct Args {
            std::string family = "exp-periodic";
            int k = 1;
            int m = 0;
            std::string x0 = "0.5,0.3";
            bool json = false;
        };
        auto a = std::make_shared<Args>();
        auto* c = sc_orbit->add_subcommand("run", "Classify one backward orbit");
        c->add_option("--family", a->family, "exp-periodic or exp-preperiodic")
            ->capture_default_str();
        c->add_option("--k", a->k, "Family parameter")->capture_default_str();
        c->add_option("--m", a->m, "Branch index")->capture_default_str();
        c->add_option("--x0", a->x0, "Start, re,im")->capture_default_str();
        c->add_flag("--json", a->json, "Shorthand for --format json");
        c->callback([ctx, a] {
            auto g = make_family(a->family, a->k);
            Portrait p = portrait_for_family(g);
            BSet b = find_b_sets(p).at(0);
            auto o = backward_orbit(g, b, parse_point(a->x0),
                                    BranchRule::constant(a->m), ctx->max_iter,
                                    ctx->tol);
            std::string fmt = a->json ? "json" : ctx->format;
            if (fmt == "json") {
                std::string out = verdict_json(p, o.verdict);
                out.back() = ',';
                out += "\"iterations\":" +
                       std::to_string(o.points.size() - 1) + "}";
                std::cout << out << "\n";
            } else if (fmt == "csv") {
                std::cout << "n,re,im,branch,step_hyp,chordal_dist_to_0,"
                             "chordal_dist_to_1,chordal_dist_to_inf\n";
                for (size_t n = 0; n < o.points.size(); ++n) {
                    const SpherePoint& z = o.points[n];
                    std::cout << n << "," << gnum(z.value.real()) << ","
                              << gnum(z.value.imag()) << ",";
                    if (n < o.branches.size()) std::cout << o.branches[n];
                    std::cout << ",";
                    if (n < o.steps.size() && o.steps[n].computed)
                        std::cout << gnum(o.steps[n].value);
                    std::cout << ","
                              << gnum(chordal(z, SpherePoint(0.0, 0.0))) << ","
                              << gnum(chordal(z, SpherePoint(1.0, 0.0))) << ","
                              << gnum(chordal(z, SpherePoint::infinity()))
                              << "\n";
                }
            } else {
                std::cout << verdict_table(p, o.verdict) << "  ("
                          << o.points.size() - 1 << " iterations)\n";
            }
        });
    }
    {
        struct Args {
            std::string family = "exp-periodic";
            int k = 1;
            std::string m_range = "-5..5";
            std::string x0 = "0.5,0.3";
        };
        auto a = std::make_shared<Args>();
        auto* c = sc_orbit->add_subcommand("sweep",
                                           "Per-branch verdicts over a range");
        c->add_option("--family", a->family, "exp-periodic or exp-preperiodic")
            ->capture_default_str();
        c->add_option("--k", a->k, "Family parameter")->capture_default_str();
        c->add_option("--m-range", a->m_range, "Branch range lo..hi")
            ->capture_default_str();
        c->add_option("--x0", a->x0, "Start, re,im")->capture_default_str();
        c->callback([ctx, a] {
            auto g = make_family(a->family, a->k);
            Portrait p = portrait_for_family(g);
            BSet b = find_b_sets(p).at(0);
            auto [lo, hi] = parse_range(a->m_range);
            auto rep = twist_sweep(g, b, parse_point(a->x0), lo, hi,
                                   ctx->max_iter, ctx->tol);
            if (ctx->format == "table") {
                for (const auto& [m, v] : rep.verdicts)
                    std::cout << "m=" << m << "  " << verdict_table(p, v)
                              << "\n";
                std::cout << rep.obstructed_count << " obstructed, "
                          << rep.realized_fixed_points.size()
                          << " realized (distinct: "
                          << (rep.realized_distinct ? "yes" : "no") << ")\n";
            } else {
                std::string out =
                    "{\"family\":\"" + a->family +
                    "\",\"k\":" + std::to_string(a->k) +
                    ",\"m_lo\":" + std::to_string(lo) +
                    ",\"m_hi\":" + std::to_string(hi) + ",\"verdicts\":[";
                for (size_t i = 0; i < rep.verdicts.size(); ++i) {
                    if (i) out += ",";
                    out += "{\"m\":" + std::to_string(rep.verdicts[i].first) +
                           ",\"result\":" +
                           verdict_json(p, rep.verdicts[i].second) + "}";
                }
                out += "],\"obstructed\":" +
                       std::to_string(rep.obstructed_count) +
                       ",\"realized_distinct\":";
                out += rep.realized_distinct ? "true" : "false";
                std::cout << out << "}\n";
            }
        });
    }
    {
        struct Args {
            std::string family = "exp-periodic";
            int k = 1;
            int starts = 50;
            std::string m_range = "-5..5";
        };
        auto a = std::make_shared<Args>();
        auto* c = sc_orbit->add_subcommand(
            "campaign", "Randomized multi-start dichotomy campaign");
        c->add_option("--family", a->family, "exp-periodic or exp-preperiodic")
            ->capture_default_str();
        c->add_option("--k", a->k, "Family parameter")->capture_default_str();
        c->add_option("--starts", a->starts, "Number of random starts")
            ->capture_default_str();
        c->add_option("--m-range", a->m_range, "Branch range lo..hi")
            ->capture_default_str();
        c->callback([ctx, a] {
            auto g = make_family(a->family, a->k);
            Portrait p = portrait_for_family(g);
            BSet b = find_b_sets(p).at(0);
            CampaignConfig cfg;
            cfg.starts = a->starts;
            std::tie(cfg.m_lo, cfg.m_hi) = parse_range(a->m_range);
            cfg.seed = ctx->seed;
            cfg.max_iter = ctx->max_iter;
            cfg.tol = ctx->tol;
            auto res = run_campaign(g, b, cfg);
            if (ctx->format == "table")
                std::cout << res.runs.size() << " runs: " << res.realized
                          << " realized, " << res.obstructed
                          << " obstructed, " << res.undecided
                          << " undecided\n";
            else
                std::cout << campaign_json(res) << "\n";
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
