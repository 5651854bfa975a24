// Copyright 2026 The pvqa Authors.

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include "pvqa/cli.hpp"
#include "pvqa/experiment.hpp"
#include "pvqa/factoring.hpp"
#include "pvqa/mesh.hpp"
#include "pvqa/optimizer.hpp"
#include "pvqa/photonics.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace pvqa;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
        }
        if (!detail.empty()) {
            detail += "; ";
        }
        detail += (ok ? "" : "FAILED ") + what;
    }
};

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const factoring::DiagonalHamiltonian &h35() {
    static const auto h =
        factoring::build_hamiltonian(factoring::bit_lengths_successive(35), 35);
    return h;
}

Outcome c1_hamiltonian() {
    Outcome o;
    const auto &h = h35();
    o.check(h.energies() == std::vector<std::uint64_t>{100, 0, 0, 196},
            "energies {100,0,0,196}");
    o.check(h.shift() == 74.0, "shift 74");
    o.check(h.ground_energy_shifted() == -74.0, "shifted ground -74");
    return o;
}

Outcome c2_degeneracy() {
    Outcome o;
    auto t0 = Clock::now();
    auto g = experiment::landscape_sweep(experiment::LandscapeFamily::a, h35(), 101);
    double worst = 0;
    for (double e : g.energies)
        worst = std::max(worst, std::abs(e));
    double dt = seconds_since(t0);
    o.check(g.energies.size() == 101 * 101, "101x101 grid");
    o.check(worst <= 1e-12, "max |E| = " + fmt("%.3g", worst));
    o.check(dt < 1.0, "runtime " + fmt("%.3f", dt) + " s < 1 s");
    return o;
}

Outcome c3_mesh() {
    Outcome o;
    auto t0 = Clock::now();
    auto l4 = mesh::MeshLayout::rectangular(4);
    double defect = 0;
    for (std::uint64_t s = 0; s < 1000; ++s)
        defect = std::max(defect, unitarity_defect(
                                      mesh::compose_mesh(l4, mesh::random_phases(l4, s))
                                          .matrix()));
    o.check(defect <= 1e-10, "max ||U'U-I|| = " + fmt("%.3g", defect));
    for (std::size_t m : {2u, 4u, 6u}) {
        auto layout = mesh::MeshLayout::rectangular(m);
        double worst = 1;
        for (std::uint64_t s = 0; s < 100; ++s) {
            auto u = mesh::haar_random_unitary(m, 9000 + s);
            auto d = mesh::decompose_unitary(u, layout);
            worst = std::min(worst, amplitude_fidelity(u.matrix(), d.recompose(layout)));
        }
        o.check(worst >= 1 - 1e-9,
                "M=" + std::to_string(m) + " min fidelity 1-" + fmt("%.2g", 1 - worst));
    }
    double dt = seconds_since(t0);
    o.check(dt < 10.0, "runtime " + fmt("%.2f", dt) + " s < 10 s");
    return o;
}

Outcome c4_gradient() {
    // Energies are compared in units of the Hamiltonian's spectral range so
    // the bound is dimensionless like h. The raw deviation is reported too.
    Outcome o;
    auto t0 = Clock::now();
    const auto &h = h35();
    auto layout = mesh::MeshLayout::rectangular(4);
    optimizer::EnergyObjective obj(h, layout);
    optimizer::OptimizerConfig cfg;
    cfg.shots.reset();
    const double range = 196.0 - 0.0;
    auto cost = [&](const mesh::PhaseConfig &p) { return obj.energy(p, 0); };
    double worst_abs = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        auto x = mesh::random_phases(layout, 5000 + s);
        auto g = optimizer::forward_gradient(x, cost, cfg);
        for (std::size_t k = 0; k < x.parameter_count(); ++k) {
            auto a = x, b = x;
            a.parameter(k) += 1e-6;
            b.parameter(k) -= 1e-6;
            double cd = (cost(a) - cost(b)) / 2e-6;
            worst_abs = std::max(worst_abs, std::abs(g.components[k] - cd));
        }
    }
    double dt = seconds_since(t0);
    o.check(worst_abs / range <= 5 * cfg.h,
            "max |fd-cd|/range = " + fmt("%.4f", worst_abs / range) + " <= 5h = " +
                fmt("%.2f", 5 * cfg.h) + " (raw " + fmt("%.3f", worst_abs) + ")");
    o.check(dt < 10.0, "runtime " + fmt("%.2f", dt) + " s < 10 s");
    return o;
}

struct Experiment35 {
    std::vector<optimizer::RunResult> runs;
    experiment::AggregateStats stats;
    double seconds = 0;
};

const Experiment35 &experiment35() {
    static const Experiment35 e = [] {
        Experiment35 r;
        auto t0 = Clock::now();
        experiment::ExperimentConfig cfg;
        cfg.n = 35;
        cfg.repetitions = 117;
        cfg.master_seed = 7;
        cfg.optimizer.shots.reset();
        r.runs = experiment::run_repetitions(cfg);
        r.stats = experiment::aggregate(r.runs, h35());
        r.seconds = seconds_since(t0);
        return r;
    }();
    return e;
}

Outcome c5_convergence() {
    Outcome o;
    const auto &e = experiment35();
    std::size_t good = 0;
    for (const auto &r : e.runs)
        good += r.final_record().energy_raw < 1.0;
    double frac = double(good) / double(e.runs.size());
    o.check(frac >= 0.90, std::to_string(good) + "/117 runs end with raw E < 1 (" +
                              fmt("%.1f", 100 * frac) + "%)");
    auto cross = e.stats.steps_to_gap[0];
    std::string where = cross ? std::to_string(*cross) : std::string("never");
    double tail = e.stats.mean_energy_shifted.back() - e.stats.ground_energy_shifted;
    o.check(cross && *cross >= 10 && *cross <= 100,
            "mean trace within 1% of E_g at iteration " + where +
                " (need 10..100; final offset " + fmt("%.3f", tail) + " vs band " +
                fmt("%.2f", 0.01 * std::abs(e.stats.ground_energy_shifted)) + ")");
    o.check(e.seconds < 300, "runtime " + fmt("%.2f", e.seconds) + " s");
    return o;
}

Outcome c6_statistics() {
    Outcome o;
    const auto &s = experiment35().stats;
    const auto &p = s.mean_distribution.probs;
    o.check(p[1] + p[2] >= 0.90, "mass on |01>,|10> = " + fmt("%.4f", p[1] + p[2]));
    o.check(s.fidelity_equal_superposition >= 0.95,
            "fidelity to superposition = " + fmt("%.5f", s.fidelity_equal_superposition));
    for (const auto &[name, f] :
         {std::pair{"|01>", s.fidelity_first}, std::pair{"|10>", s.fidelity_second}}) {
        bool ok = f && *f >= 0.55 && *f <= 0.85;
        o.check(ok, std::string("fidelity to ") + name + " = " + fmt("%.4f", f.value_or(-1)));
    }
    return o;
}

bool factor_via_cli(std::uint64_t n, std::uint64_t p, std::uint64_t q, Outcome &o) {
    auto dir = fs::temp_directory_path() / ("pvqa_accept_" + std::to_string(n));
    fs::remove_all(dir);
    std::ostringstream out, err;
    int code = cli::run({"pvqa", "factor", std::to_string(n), "--exact", "--reps",
                         n == 143 ? "50" : "117", "--seed", "7", "--out", dir.string()},
                        out, err);
    fs::remove_all(dir);

    // Independent check of the claimed pair against the brute-force ground
    // states of the Hamiltonian.
    auto bits = factoring::bit_lengths(factoring::SemiprimeInstance(n));
    auto h = factoring::build_hamiltonian(bits, n);
    bool ground_ok = true;
    for (auto g : factoring::ground_states_bruteforce(h)) {
        auto f = factoring::decode_solution(g, bits, n);
        ground_ok &= f.valid && ((f.x == p && f.y == q) || (f.x == q && f.y == p));
    }
    const std::string a = std::to_string(n) + " = " + std::to_string(p) + " x " +
                          std::to_string(q);
    const std::string b = std::to_string(n) + " = " + std::to_string(q) + " x " +
                          std::to_string(p);
    bool printed = out.str().find(a) != std::string::npos ||
                   out.str().find(b) != std::string::npos;
    bool ok = code == 0 && printed && ground_ok;
    o.check(ok, "factor " + std::to_string(n) + " -> " + a + " (exit " +
                    std::to_string(code) + ")");
    return ok;
}

Outcome c7_generalization() {
    Outcome o;
    auto t0 = Clock::now();
    factor_via_cli(15, 3, 5, o);
    factor_via_cli(143, 11, 13, o);

    std::vector<bool> comp(1000, false);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i < 1000; ++i) {
        if (comp[i])
            continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j < 1000; j += i)
            comp[j] = true;
    }
    std::size_t checked = 0, bad = 0;
    for (std::size_t i = 1; i + 1 < primes.size(); ++i) {
        std::uint64_t p = primes[i], q = primes[i + 1], n = p * q;
        if (n >= 1'000'000)
            break;
        ++checked;
        try {
            auto b = factoring::bit_lengths_successive(n);
            bool ok = b.delta_n * b.delta_n == b.ceil_sqrt * b.ceil_sqrt - n &&
                      b.nx == factoring::bit_length(p) &&
                      b.ny == factoring::bit_length(q);
            bad += !ok;
        } catch (const std::exception &) {
            ++bad;
        }
    }
    o.check(bad == 0, std::to_string(checked) + " successive-prime semiprimes < 1e6, " +
                          std::to_string(bad) + " mismatches");
    double dt = seconds_since(t0);
    o.check(dt < 30.0, "runtime " + fmt("%.2f", dt) + " s < 30 s");
    return o;
}

Outcome c8_shot_noise() {
    // Per trial: |E_sampled - E_exact| <= 5 sqrt(Var / shots) at 1e3..1e6.
    // Across trials: RMS deviation falls by roughly sqrt(10) per decade.
    Outcome o;
    auto layout = mesh::MeshLayout::rectangular(4);
    const auto &h = h35();
    const std::uint64_t levels[] = {1'000, 10'000, 100'000, 1'000'000};
    std::vector<double> ms(4, 0.0);
    int ok = 0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        auto d = photonics::exact_probabilities(photonics::evolve_single_photon(
            layout, mesh::random_phases(layout, 70000 + std::uint64_t(t)), {0}));
        double e = photonics::energy_expectation(d, h);
        double var = -e * e;
        for (std::size_t i = 0; i < 4; ++i)
            var += d.probs[i] * h.energies_f64()[i] * h.energies_f64()[i];
        bool within = true;
        for (std::size_t l = 0; l < 4; ++l) {
            auto est = photonics::estimate(
                photonics::sample_counts(d, levels[l], 31 * std::uint64_t(t) + l));
            double dev = photonics::energy_expectation(est, h) - e;
            ms[l] += dev * dev / trials;
            within &= std::abs(dev) <= 5 * std::sqrt(var / double(levels[l])) + 1e-9;
        }
        ok += within;
    }
    o.check(ok >= 198, std::to_string(ok) + "/200 trials inside 5 sigma at every level");
    for (std::size_t l = 0; l + 1 < 4; ++l) {
        double ratio = std::sqrt(ms[l] / ms[l + 1]);
        o.check(ratio > 2.0 && ratio < 5.0,
                "RMS ratio " + std::to_string(levels[l]) + "->" +
                    std::to_string(levels[l + 1]) + " = " + fmt("%.2f", ratio));
    }
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 hamiltonian N=35", c1_hamiltonian},
        {"2 degeneracy landscape", c2_degeneracy},
        {"3 mesh algebra", c3_mesh},
        {"4 gradient check", c4_gradient},
        {"5 end-to-end convergence", c5_convergence},
        {"6 output statistics", c6_statistics},
        {"7 generalization", c7_generalization},
        {"8 shot noise", c8_shot_noise},
    };
    int failed = 0;
    for (const auto &[name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception &e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        failed += !o.pass;
        std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed,
                criteria.size());
    return failed == 0 ? 0 : 1;
}
