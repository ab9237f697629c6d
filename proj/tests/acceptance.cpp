// End-to-end acceptance gate.  Each numbered criterion prints one PASS/FAIL
// line; the process exits nonzero if any criterion fails.  Tolerances are
// pinned here on purpose — loosening them is a behaviour change, not a tweak.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "meanlab/conjugate.hpp"
#include "meanlab/functional_means.hpp"
#include "meanlab/operator_means.hpp"
#include "meanlab/quadrature.hpp"
#include "meanlab/scalar_means.hpp"
#include "meanlab/suites.hpp"

using namespace meanlab;
namespace fs = std::filesystem;

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

double quad_value(const SymMatrix& m, const std::vector<double>& x) {
    const std::vector<double> mx = matvec(m.raw(), x);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * mx[i];
    return 0.5 * acc;
}

double rel(double got, double want) { return std::fabs(got - want) / (1.0 + std::fabs(want)); }

// ---- criterion 7 helpers ----

GridFn random_grid_fn(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nd(3, 64);
    std::uniform_real_distribution<double> vd(-5.0, 5.0);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    const int n = nd(rng);
    std::vector<ExtReal> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = ud(rng) < 0.2 ? ExtReal::inf() : ExtReal(vd(rng));
    v[static_cast<std::size_t>(n / 2)] = ExtReal(vd(rng)); // keep the domain nonempty
    return GridFn(-3.0, 3.0, v);
}

std::vector<double> naive_conjugate(const GridFn& f, const DualGridFn& d) {
    std::vector<double> out(static_cast<std::size_t>(d.size()));
    for (int k = 0; k < d.size(); ++k) {
        bool first = true;
        double best = 0.0;
        for (int j = 0; j < f.size(); ++j) {
            if (!f[j].is_finite()) continue;
            const double cand = d.s(k) * f.x(j) - f[j].value();
            if (first || cand > best) best = cand;
            first = false;
        }
        out[static_cast<std::size_t>(k)] = best;
    }
    return out;
}

double parabola_conj_error(int n) {
    const GridFn f = GridFn::sample(-4.0, 4.0, n, [](double x) { return ExtReal(0.5 * x * x); });
    const DualGridFn d = conjugate_grid(f, -2.0, 2.0, 1009);
    double worst = 0.0;
    for (int k = 0; k < d.size(); ++k)
        worst = std::max(worst, std::fabs(d.values[static_cast<std::size_t>(k)] -
                                          0.5 * d.s(k) * d.s(k)));
    return worst;
}

// ---- criterion 10 helper ----

std::string strip_headers(std::string s) {
    const std::string key = "\"header\":{";
    for (auto pos = s.find(key); pos != std::string::npos; pos = s.find(key, pos)) {
        const auto close = s.find('}', pos);
        if (close == std::string::npos) return s;
        s.erase(pos, close - pos + 1);
    }
    return s;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

} // namespace

int main() {
    int failures = 0;
    const auto criterion = [&](int number, const char* what, const std::function<bool()>& body) {
        bool ok = false;
        try {
            ok = body();
        } catch (const std::exception& e) {
            std::printf("ACCEPTANCE %d FAIL — %s (exception: %s)\n", number, what, e.what());
            ++failures;
            return;
        }
        std::printf("ACCEPTANCE %d %s — %s\n", number, ok ? "PASS" : "FAIL", what);
        if (!ok) ++failures;
    };

    criterion(1, "hard-coded sign-crossover values reproduced to 1e-4 in under 1 s", [] {
        const Stopwatch sw;
        const Report r = reproduce_counterexamples();
        return r.clean() && r.cases_run() == 5 && sw.seconds() < 1.0;
    });

    criterion(2, "quadrature rules integrate 1, t and 1-t to 1e-12 for nine weights", [] {
        for (int i = 1; i <= 9; ++i) {
            const double lam = 0.1 * i;
            const JacobiRule rule = jacobi_rule(lam, 64);
            double w = 0.0, wt = 0.0, wc = 0.0;
            for (int k = 0; k < rule.size(); ++k) {
                const double wk = rule.weights[static_cast<std::size_t>(k)];
                const double tk = rule.nodes[static_cast<std::size_t>(k)];
                w += wk;
                wt += wk * tk;
                wc += wk * (1.0 - tk);
            }
            if (std::fabs(w - 1.0) > 1e-12) return false;
            if (std::fabs(wt - lam) > 1e-12) return false;
            if (std::fabs(wc - (1.0 - lam)) > 1e-12) return false;
        }
        return true;
    });

    criterion(3, "scalar suite has zero violations on the default sweep in under 5 s", [] {
        const Stopwatch sw;
        const Report r = run_scalar_suite(SweepConfig::defaults());
        return r.clean() && sw.seconds() < 5.0;
    });

    criterion(4, "operator suite has zero order violations on the default ensemble in under 30 s",
              [] {
                  const Stopwatch sw;
                  const Report r = run_operator_suite(SweepConfig::defaults());
                  return r.clean() && sw.seconds() < 30.0;
              });

    criterion(5, "functional quadrature means match the matrix means to 1e-6 in dims 1-4", [] {
        for (int dim = 1; dim <= 4; ++dim) {
            const auto sd = static_cast<std::uint64_t>(dim);
            const SpdMatrix a = random_spd(dim, 500 + sd, -1.5, 1.5);
            const SpdMatrix b = random_spd(dim, 600 + sd, -1.5, 1.5);
            const QuadPair p{QuadForm(a), QuadForm(b)};
            const ProbeSet probes{random_probe(dim, 700 + sd), random_probe(dim, 800 + sd)};
            for (double lam : {0.25, 0.5, 0.75}) {
                const Weight w(lam);
                const JacobiRule rule = jacobi_rule(lam, 64);
                const JacobiRule rule_swap = jacobi_rule(1.0 - lam, 64);
                const JacobiRule half = jacobi_rule(0.5, 64);
                const std::vector<double> ge = geom_fn(p, w, rule, probes);
                const std::vector<double> hz = heinz_fn(p, w, rule, rule_swap, probes);
                const std::vector<double> he = heron_fn(p, w, half, probes);
                const SymMatrix sharp = op_mean(a, b, w, OpMeanKind::sharp).sym();
                const SymMatrix heinz = heinz_op(a, b, w).sym();
                const SymMatrix heron = heron_op(a, b, w).sym();
                for (std::size_t i = 0; i < probes.size(); ++i) {
                    if (rel(ge[i], quad_value(sharp, probes[i])) > 1e-6) return false;
                    if (rel(hz[i], quad_value(heinz, probes[i])) > 1e-6) return false;
                    if (rel(he[i], quad_value(heron, probes[i])) > 1e-6) return false;
                }
            }
        }
        return true;
    });

    criterion(6, "integral identities close to 1e-6 and the entropy gap to 1e-8", [] {
        for (int dim = 1; dim <= 3; ++dim) {
            const auto sd = static_cast<std::uint64_t>(dim);
            const SpdMatrix a = random_spd(dim, 910 + sd, -1.5, 1.5);
            const SpdMatrix b = random_spd(dim, 920 + sd, -1.5, 1.5);
            const QuadPair p{QuadForm(a), QuadForm(b)};
            const ProbeSet probes{random_probe(dim, 930 + sd), random_probe(dim, 940 + sd)};
            for (double lam : {0.3, 0.5}) {
                const IdentityResiduals ids = identity_residuals(p, Weight(lam), probes, 64);
                if (ids.worst() > 1e-6) return false;
            }
        }
        for (int dim = 2; dim <= 4; ++dim) {
            const auto sd = static_cast<std::uint64_t>(dim);
            const SpdMatrix a = random_spd(dim, 950 + sd, -1.5, 1.5);
            const SpdMatrix b = random_spd(dim, 960 + sd, -1.5, 1.5);
            const SymMatrix closed = j_closed(a, b);
            const SymMatrix quad = j_quadrature(a, b, 96);
            if (quad.sub(closed).frobenius() / (1.0 + closed.frobenius()) > 1e-8) return false;
        }
        Matrix ma(1), mb(1);
        ma(0, 0) = 3.0;
        mb(0, 0) = 0.4;
        const double j11 = j_quadrature(SpdMatrix(ma), SpdMatrix(mb), 96)(0, 0);
        return std::fabs(j11 - (3.0 - 0.4) * std::log(3.0 / 0.4)) <= 1e-10;
    });

    criterion(7, "transform equals the brute-force oracle exactly and converges at order 2", [] {
        std::mt19937_64 rng(20240811);
        for (int trial = 0; trial < 50; ++trial) {
            const GridFn f = random_grid_fn(rng);
            const DualGridFn d = conjugate_grid(f);
            const std::vector<double> want = naive_conjugate(f, d);
            for (int k = 0; k < d.size(); ++k)
                if (d.values[static_cast<std::size_t>(k)] != want[static_cast<std::size_t>(k)])
                    return false;
            const GridFn once = biconjugate_grid(f);
            const GridFn twice = biconjugate_grid(once);
            for (int i = 0; i < once.size(); ++i)
                if (!(once[i] == twice[i])) return false;
        }
        const double coarse = parabola_conj_error(129);
        const double fine = parabola_conj_error(257);
        const double order = std::log2(coarse / fine);
        return coarse > 0.0 && fine > 0.0 && order >= 1.9;
    });

    criterion(8, "scan of the conjectured combination finds no value below -1e-9 in under 10 s",
              [] {
                  const Stopwatch sw;
                  const Report r = search_open_inequality(SweepConfig::defaults());
                  const std::string text = r.to_text();
                  return r.clean() && text.find("evidence") != std::string::npos &&
                         sw.seconds() < 10.0;
              });

    criterion(9, "difference coefficient stays nonnegative across a 1001-point weight grid", [] {
        for (int i = 0; i <= 1000; ++i) {
            const double lam = static_cast<double>(i) / 1000.0;
            if (comparison_fns(2.0, Weight(lam)).h < -1e-15) return false;
        }
        return true;
    });

    criterion(10, "two full verification runs emit byte-identical report bodies", [] {
        const fs::path dir =
            fs::temp_directory_path() / ("meanlab_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        const fs::path fa = dir / "run_a.json";
        const fs::path fb = dir / "run_b.json";
        const auto run = [](const fs::path& out) {
            const std::string cmd = std::string("\"") + MEANLAB_CLI_PATH +
                                    "\" verify all --seed 42 --out " + out.string();
            const int status = std::system(cmd.c_str());
            return WIFEXITED(status) && WEXITSTATUS(status) == 0;
        };
        if (!run(fa) || !run(fb)) return false;
        const std::string a = slurp(fa), b = slurp(fb);
        if (a.empty() || a.find("\"header\"") == std::string::npos) return false;
        return strip_headers(a) == strip_headers(b);
    });

    if (failures == 0) {
        std::printf("ACCEPTANCE OK — all criteria passed\n");
        return 0;
    }
    std::printf("ACCEPTANCE FAILED — %d criterion(s) failed\n", failures);
    return 1;
}
