// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "tgeom/cli.hpp"
#include "tgeom/tgeom.hpp"

using namespace tgeom;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

bool report(int id, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = secs < budget_s;
    const bool ok = o.pass && in_time;
    std::printf("%s  %d  %-34s %7.3fs (budget %gs)  %s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(), secs,
                budget_s, o.detail.c_str(), in_time ? "" : " [over budget]");
    std::fflush(stdout);
    return ok;
}

double rel_err(double got, double want, double scale) {
    return std::abs(got - want) / std::max({std::abs(want), scale, 1e-300});
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

Outcome euclidean_oracles() {
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    for (std::size_t dim : {2u, 3u}) {
        const auto eu = euclidean_sigma(dim);
        for (int i = 0; i < 1000; ++i) {
            const auto a = oracle::random_point(rng, dim, -5, 5);
            const auto b = oracle::random_point(rng, dim, -5, 5);
            const auto c = oracle::random_point(rng, dim, -5, 5);
            const auto d = oracle::random_point(rng, dim, -5, 5);
            const auto ab = oracle::minus(b, a);
            const auto ac = oracle::minus(c, a);
            const auto cd = oracle::minus(d, c);
            const Point pa(a), pb(b), pc(c), pd(d);
            const double nab = oracle::norm(ab);
            const double nac = oracle::norm(ac);
            const double ncd = oracle::norm(cd);
            worst = std::max(worst, rel_err(magnitude(eu, {pa, pb}), nab, 0.0));
            worst = std::max(worst, rel_err(scalar_product(eu, pa, pb, pc), oracle::dot(ab, ac), nab * nac));
            worst = std::max(worst,
                             rel_err(scalar_product_general(eu, {pa, pb}, {pc, pd}), oracle::dot(ab, cd), nab * ncd));
            worst = std::max(worst, rel_err(cosine_angle(eu, pa, pb, pc).cosine,
                                            oracle::dot(ab, ac) / (nab * nac), 1.0));
        }
    }
    return {worst <= 1e-10, "worst relative error " + fmt("%.3g", worst)};
}

Outcome cosine_identity_everywhere() {
    std::mt19937_64 rng(1002);
    const PredicateRegistry registry;

    // a tabulated geometry exported to CSV and read back
    PointTuple cloud;
    for (int i = 0; i < 40; ++i) cloud.emplace_back(oracle::random_point(rng, 2, -3, 3));
    std::stringstream csv;
    write_sigma_csv(csv, build_sigma_matrix(euclidean_sigma(2), cloud));
    const auto reloaded = tabulated_sigma(read_sigma_csv(csv, "reloaded"));

    const auto region = polygon_region_sigma(u_shaped_region());
    struct Case {
        WorldFunction wf;
        std::function<Point()> draw;
    };
    std::uniform_int_distribution<std::size_t> pick(0, cloud.size() - 1);
    const std::vector<Case> cases{
        {euclidean_sigma(2), [&] { return Point(oracle::random_point(rng, 2, -5, 5)); }},
        {distorted_sigma(euclidean_sigma(2), {0.1}), [&] { return Point(oracle::random_point(rng, 2, -5, 5)); }},
        {sphere_sigma(1.0), [&] { return Point(oracle::random_point(rng, 3, -1, 1)); }},
        {region,
         [&] {
             for (;;) {
                 Point p(oracle::random_point(rng, 2, 0, 3));
                 if (region.contains(p)) return p;
             }
         }},
        {reloaded, [&] { return Point::id(pick(rng)); }},
    };
    double worst = 0.0;
    for (const auto& c : cases) {
        for (int i = 0; i < 1000; ++i) {
            const PointTuple t{c.draw(), c.draw(), c.draw()};
            const double r = evaluate(registry, "cosine_identity", c.wf, t);
            if (!(r < 1e-10)) return {false, "residual " + fmt("%.3g", r) + " under " + c.wf.name()};
            worst = std::max(worst, r);
        }
    }
    return {true, "5 geometries, worst residual " + fmt("%.3g", worst)};
}

Outcome sigma_immanence() {
    std::mt19937_64 rng(1003);
    const PredicateRegistry registry;
    const std::vector<WorldFunction> geometries{euclidean_sigma(3), distorted_sigma(euclidean_sigma(3), {0.1}),
                                                sphere_sigma(1.0)};
    std::size_t checked = 0;
    for (const auto& wf : geometries) {
        for (int i = 0; i < 100; ++i) {
            PointTuple tuple;
            for (int k = 0; k < 4; ++k) tuple.emplace_back(oracle::random_point(rng, 3));
            const auto table = tabulated_sigma(build_sigma_matrix(wf, tuple));
            for (const auto& name : registry.names()) {
                const std::size_t n = registry.at(name).arity;
                const double live = evaluate(registry, name, wf, PointTuple(tuple.begin(), tuple.begin() + n));
                const double tab = evaluate(registry, name, table, identity_tuple(n));
                const bool same = (std::isnan(live) && std::isnan(tab)) || live == tab;
                if (!same) return {false, name + " differs under " + wf.name()};
                ++checked;
            }
        }
    }
    return {true, std::to_string(checked) + " evaluations bitwise identical"};
}

Outcome convexity() {
    const Point base{0.5, 2.5};
    const PointTuple probes{{2.5, 2.5}, {0.5, 0.5}, {2.5, 0.5}, {1.5, 0.5}};
    const auto region = convexity_demo(u_shaped_region(), base, probes);
    const auto flat = gram_report(euclidean_sigma(2), base, probes);
    constexpr double kFrozen = -0.012670686334542117;
    const bool ok = !region.embeddable && region.min_eigenvalue < -1e-6 &&
                    std::abs(region.min_eigenvalue - kFrozen) <= 1e-10 && flat.embeddable;
    return {ok, "region min eigenvalue " + fmt("%.17g", region.min_eigenvalue) + ", flat embeddable=" +
                    (flat.embeddable ? "true" : "false")};
}

Outcome tube_width() {
    const Point p0{0.0, 0.0};
    const Point p1{1.0, 0.0};
    const TubeGrid grid{1.0, 0.01, 2};
    const auto eu = euclidean_sigma(2);
    const double w_eu = sample_tube(eu, p0, p1, grid, 1e-9, 0).width;
    std::vector<double> widths;
    for (double d : {0.05, 0.1, 0.2}) widths.push_back(sample_tube(distorted_sigma(eu, {d}), p0, p1, grid, 1e-9, 0).width);
    // pre-build oracle: no grid point off {P0, P1} has residual below 3d², so the width is 0
    constexpr double kFrozenWidth = 0.0;
    const bool thin = w_eu < 1e-3 * grid.spacing;
    const bool positive = widths[1] > 0.0;
    const bool matches = std::abs(widths[1] - kFrozenWidth) <= 1e-9;
    const bool monotone = widths[0] <= widths[1] && widths[1] <= widths[2];
    std::string detail = "euclidean " + fmt("%.3g", w_eu) + (thin ? " ok" : " too wide") + "; distorted d=0.1 " +
                         fmt("%.3g", widths[1]) + (positive ? " positive" : " NOT positive") +
                         (matches ? ", matches fixture" : ", fixture mismatch") +
                         (monotone ? "; nondecreasing" : "; not monotone");
    return {thin && positive && matches && monotone, detail};
}

Outcome intransitivity() {
    const IntransitivitySearch search{10000, 20.0};
    bool ok = true;
    std::string detail;
    for (std::size_t dim : {2u, 3u}) {
        const auto r = find_intransitivity(euclidean_sigma(dim), search, 1e-9, 42);
        ok = ok && !r.found;
        detail += "euclidean(" + std::to_string(dim) + ") found=" + (r.found ? "true" : "false") + "; ";
    }
    auto witness = [&](const WorldFunction& wf, const IntransitivitySearch& s) {
        const double tol = 1e-3;
        const auto r = find_intransitivity(wf, s, tol, 42);
        const bool verified = r.found && is_parallel(wf, r.u, r.v, tol) && is_parallel(wf, r.v, r.w, tol) &&
                              !is_parallel(wf, r.u, r.w, tol);
        ok = ok && verified;
        detail += wf.name() + (verified ? " witness at trial " + std::to_string(r.trial) : " no witness") + "; ";
    };
    witness(distorted_sigma(euclidean_sigma(2), {0.2}), search);
    witness(sphere_sigma(1.0), {10000, 1.0});
    return {ok, detail};
}

Outcome cli_determinism() {
    const std::string data = TGEOM_DATA_DIR;
    const std::string golden = TGEOM_GOLDEN_DIR;
    const std::string csv = (std::filesystem::temp_directory_path() / "tgeom_acceptance_tube.csv").string();
    struct Invocation {
        std::vector<std::string> args;
        std::string golden;
    };
    const std::vector<Invocation> invocations{
        {{"--geometry", data + "/euclidean2.json", "eval", "sigma", "0,0", "3,4"}, "eval_sigma.json"},
        {{"--geometry", data + "/u_region.json", "embed", "--base", "0.5,2.5", "--points-file",
          data + "/u_probes.txt"},
         "embed_u_region.json"},
        {{"--geometry", data + "/distorted.json", "--seed", "42", "--tol", "1e-3", "parallel"},
         "parallel_distorted.json"},
        {{"list-geometries"}, "list_geometries.json"},
        {{"--geometry", data + "/triangle.json", "eval", "predicate:right_angle", "c", "a", "b"}, ""},
        {{"--geometry", data + "/sphere.json", "--seed", "3", "parallel", "--box", "1"}, ""},
        {{"--geometry", data + "/euclidean2.json", "--seed", "9", "--out", csv, "tube", "--p0", "0,0", "--p1", "1,0"},
         ""},
    };
    std::size_t goldens = 0;
    for (const auto& inv : invocations) {
        std::string outputs[2];
        std::string csvs[2];
        for (int k = 0; k < 2; ++k) {
            std::ostringstream out;
            std::ostringstream err;
            if (cli::run(inv.args, out, err) != 0) return {false, "command failed: " + err.str()};
            outputs[k] = out.str();
            std::ifstream in(csv);
            std::stringstream buf;
            buf << in.rdbuf();
            csvs[k] = buf.str();
        }
        if (outputs[0] != outputs[1] || csvs[0] != csvs[1]) return {false, "nondeterministic: " + inv.args.back()};
        if (!inv.golden.empty()) {
            std::ifstream in(golden + "/" + inv.golden);
            if (!in) return {false, "missing golden " + inv.golden};
            std::stringstream buf;
            buf << in.rdbuf();
            if (buf.str() != outputs[0]) return {false, "golden mismatch " + inv.golden};
            ++goldens;
        }
    }
    std::filesystem::remove(csv);
    return {true, std::to_string(invocations.size()) + " invocations repeatable, " + std::to_string(goldens) +
                      " goldens byte-identical"};
}

}  // namespace

int main() {
    bool all = true;
    all &= report(1, "euclidean oracle suite", 1.0, euclidean_oracles);
    all &= report(2, "cosine identity, every geometry", 5.0, cosine_identity_everywhere);
    all &= report(3, "sigma-immanence law", 1.0, sigma_immanence);
    all &= report(4, "convexity problem", 1.0, convexity);
    all &= report(5, "tube width", 10.0, tube_width);
    all &= report(6, "parallelism intransitivity", 5.0, intransitivity);
    all &= report(7, "cli determinism and goldens", 60.0, cli_determinism);
    return all ? 0 : 1;
}
