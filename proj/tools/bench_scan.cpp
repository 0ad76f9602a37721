// Benchmark the data-parallel scans against their serial reference.

#include <chrono>
#include <iomanip>
#include <iostream>

#include "pretop/logic.hpp"
#include "pretop/parallel.hpp"
#include "pretop/sites.hpp"

using namespace pretop;

namespace {

double seconds(const std::function<void()>& body) {
    auto start = std::chrono::steady_clock::now();
    body();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void row(const std::string& name, std::size_t n, double serial, double openmp) {
    std::cout << std::left << std::setw(38) << name << " n=" << std::setw(6) << n
              << std::fixed << std::setprecision(3) << " serial " << std::setw(8) << serial
              << " openmp " << std::setw(8) << openmp << " speedup "
              << std::setprecision(2) << (openmp > 0 ? serial / openmp : 0.0) << "x\n";
}

} // namespace

int main() {
    // kernel 1: sheaf-universe scan over a three-object base
    {
        auto c = require_valid(chain3_category());
        sites::Site s;
        s.cat = c;
        s.cov["2"] = {sites::CoveringFamily{"W", "2", {"g", "gf"}}};
        s.cov["1"] = {sites::CoveringFamily{"I1", "1", {"id_1"}}};
        s.cov["0"] = {sites::CoveringFamily{"I0", "0", {"id_0"}}};
        auto g = sites::generate_cov(s, 3);
        auto j = sites::sieve_saturate(s);
        std::size_t n = psh_universe(c, 3).size();

        auto run = [&](ExecMode mode) {
            auto a = sites::sheaf_equivalence_check(s, g.site, 3, mode);
            auto b = sites::sheaf_equivalence_check(s, j, 3, mode);
            if (!a.equivalent || !b.equivalent) std::cout << "unexpected discrepancy!\n";
        };
        double ts = seconds([&] { run(ExecMode::Serial); });
        double tp = seconds([&] { run(ExecMode::OpenMP); });
        row("sheaf-universe scan (stalks <= 3)", n, ts, tp);
    }

    // kernel 2: forcing battery over a presheaf structure
    {
        using namespace pretop::logic;
        auto c = require_valid(parallel_pair_category());
        auto st = Structure::over_psh(c);
        Presheaf q;
        q.base = c;
        q.stalk["b"] = {"s", "t", "w"};
        q.stalk["a"] = {"o", "o2"};
        for (const auto& el : q.stalk["b"]) q.act[{"id_b", el}] = el;
        for (const auto& el : q.stalk["a"]) q.act[{"id_a", el}] = el;
        q.act[{"u", "s"}] = "o";
        q.act[{"u", "t"}] = "o";
        q.act[{"u", "w"}] = "o2";
        q.act[{"v", "s"}] = "o";
        q.act[{"v", "t"}] = "o2";
        q.act[{"v", "w"}] = "o2";
        st.add_sort("X", require_valid(std::move(q)));
        st.add_pred("P", {"X"}, {{"b", {"s"}}, {"a", {"o"}}});

        std::vector<FormulaPtr> battery;
        std::vector<std::string> bodies = {"P(x0)", "~P(x0)", "P(x0) \\/ ~P(x0)", "~~P(x0)"};
        for (int rep = 0; rep < 96; ++rep)
            for (const auto& b : bodies)
                for (const auto& qf : {"forall", "exists"}) {
                    battery.push_back(parse_formula(
                        std::string(qf) + " x0:X. forall x1:X. exists x2:X. forall x3:X. " +
                            "x1 = x1 /\\ x2 = x2 /\\ x3 = x3 /\\ (" + b + ")",
                        st.symbol_names()));
                }
        std::vector<unsigned char> out_serial(battery.size()), out_omp(battery.size());
        double ts = seconds([&] {
            parallel_for(battery.size(), ExecMode::Serial, [&](std::size_t i) {
                out_serial[i] = force_at(*battery[i], st, "b", {}) ? 1 : 0;
            });
        });
        double tp = seconds([&] {
            parallel_for(battery.size(), ExecMode::OpenMP, [&](std::size_t i) {
                out_omp[i] = force_at(*battery[i], st, "b", {}) ? 1 : 0;
            });
        });
        if (out_serial != out_omp) std::cout << "unexpected divergence!\n";
        row("forcing battery", battery.size(), ts, tp);
    }
    return 0;
}
