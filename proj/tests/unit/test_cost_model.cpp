#include <catch2/catch_amalgamated.hpp>

#include <flextpu/dataflow.hpp>

#include <algorithm>
#include <random>

using namespace flextpu;

namespace {

ArrayConfig array_of(Count rows, Count cols) {
    ArrayConfig a;
    a.rows = rows;
    a.cols = cols;
    return a;
}

// Event-enumeration oracle, independent of fold_cycles(): lists every MAC of a
// fold with its cycle under the skew rule (PE(i,j) sees step s at s + i + j),
// then adds the non-MAC phase (r' drain for OS, r' preload before WS/IS).
Count enumerate_fold(const FoldDims& f, Dataflow df) {
    Count last_mac = 0;
    for (Count i = 0; i < f.used_rows; ++i) {
        for (Count j = 0; j < f.used_cols; ++j) {
            for (Count s = 0; s < f.stream_len; ++s) last_mac = std::max(last_mac, s + i + j);
        }
    }
    const Count phase = f.used_rows;
    return df == Dataflow::OS ? last_mac + 1 + phase : phase + last_mac + 1;
}

Count enumerate_cycles(const GemmShape& s, const ArrayConfig& a, Dataflow df) {
    Count total = 0;
    for (const auto& f : plan_folds(s, a, df).folds) total += enumerate_fold(f, df);
    return total;
}

// Brute-force access tally: walks every matrix element for every fold and counts
// the reads that fold makes.
MemoryAccesses brute_force_accesses(const GemmShape& s, const ArrayConfig& a, Dataflow df) {
    const auto plan = plan_folds(s, a, df);
    MemoryAccesses acc;
    auto in = [](Count x, Count off, Count len) { return x >= off && x < off + len; };
    for (const auto& f : plan.folds) {
        for (Count t = 0; t < s.t_rows; ++t) {
            for (Count k = 0; k < s.k_inner; ++k) {
                bool read = false;
                if (df == Dataflow::OS) read = in(t, f.row_offset, f.used_rows);
                if (df == Dataflow::WS) read = in(k, f.row_offset, f.used_rows);
                if (df == Dataflow::IS) read = in(k, f.row_offset, f.used_rows) && in(t, f.col_offset, f.used_cols);
                acc.sram_reads_ifmap += read ? 1 : 0;
            }
        }
        for (Count k = 0; k < s.k_inner; ++k) {
            for (Count m = 0; m < s.m_cols; ++m) {
                bool read = false;
                if (df == Dataflow::OS) read = in(m, f.col_offset, f.used_cols);
                if (df == Dataflow::WS) read = in(k, f.row_offset, f.used_rows) && in(m, f.col_offset, f.used_cols);
                if (df == Dataflow::IS) read = in(k, f.row_offset, f.used_rows);
                acc.sram_reads_filter += read ? 1 : 0;
            }
        }
    }
    acc.sram_writes_ofmap = s.t_rows * s.m_cols;
    if (df != Dataflow::OS) acc.psum_spill_accesses = 2 * s.t_rows * s.m_cols * (plan.row_folds - 1);
    return acc;
}

}  // namespace

TEST_CASE("closed-form cycle examples", "[dataflow]") {
    CHECK(analytical_cycles({1, 1, 1}, array_of(1, 1), Dataflow::OS).cycles == 2);
    CHECK(analytical_cycles({2, 2, 2}, array_of(2, 2), Dataflow::OS).cycles == 6);
    const auto ws = analytical_cycles({2, 2, 2}, array_of(2, 2), Dataflow::WS).cycles;
    const auto is = analytical_cycles({2, 2, 2}, array_of(2, 2), Dataflow::IS).cycles;
    CHECK(ws == is);
    CHECK(ws == 6);
}

TEST_CASE("closed form agrees with the event-enumeration oracle", "[dataflow]") {
    const std::vector<Count> dims{1, 2, 3, 5, 8, 16};
    for (Count n : {1, 2, 3, 4, 8}) {
        const auto a = array_of(n, n);
        for (Count t : dims)
            for (Count k : dims)
                for (Count m : dims)
                    for (Dataflow df : kAllDataflows) {
                        const GemmShape s{t, k, m};
                        INFO("shape " << t << "x" << k << "x" << m << " array " << n << " " << to_string(df));
                        REQUIRE(analytical_cycles(s, a, df).cycles == enumerate_cycles(s, a, df));
                    }
    }
}

TEST_CASE("WS and IS are duals on square arrays", "[dataflow]") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<Count> dim(1, 200);
    std::uniform_int_distribution<Count> edge(1, 40);
    for (int trial = 0; trial < 500; ++trial) {
        const Count t = dim(rng), k = dim(rng), m = dim(rng);
        const auto a = array_of(edge(rng), 0);
        auto sq = a;
        sq.cols = sq.rows;
        CHECK(analytical_cycles({t, k, m}, sq, Dataflow::WS).cycles ==
              analytical_cycles({m, k, t}, sq, Dataflow::IS).cycles);
    }
}

TEST_CASE("OS transpose swaps the r' and c' roles", "[dataflow]") {
    std::mt19937 rng(9);
    std::uniform_int_distribution<Count> dim(1, 120);
    std::uniform_int_distribution<Count> edge(1, 16);
    for (int trial = 0; trial < 300; ++trial) {
        const Count t = dim(rng), k = dim(rng), m = dim(rng);
        const auto a = array_of(edge(rng), 1);
        auto sq = a;
        sq.cols = sq.rows;
        Count swapped = 0;
        for (const auto& f : plan_folds({t, k, m}, sq, Dataflow::OS).folds) {
            swapped += f.stream_len + 2 * f.used_cols + f.used_rows - 2;
        }
        CHECK(analytical_cycles({m, k, t}, sq, Dataflow::OS).cycles == swapped);
    }
}

TEST_CASE("cycles are monotone in every GEMM dimension", "[dataflow]") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<Count> dim(1, 150);
    std::uniform_int_distribution<Count> edge(1, 20);
    for (int trial = 0; trial < 300; ++trial) {
        const GemmShape s{dim(rng), dim(rng), dim(rng)};
        const auto a = array_of(edge(rng), edge(rng));
        for (Dataflow df : kAllDataflows) {
            const Count base = analytical_cycles(s, a, df).cycles;
            CHECK(analytical_cycles({s.t_rows + 1, s.k_inner, s.m_cols}, a, df).cycles >= base);
            CHECK(analytical_cycles({s.t_rows, s.k_inner + 1, s.m_cols}, a, df).cycles >= base);
            CHECK(analytical_cycles({s.t_rows, s.k_inner, s.m_cols + 1}, a, df).cycles >= base);
        }
    }
}

TEST_CASE("utilization bounds", "[dataflow]") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<Count> dim(1, 300);
    std::uniform_int_distribution<Count> edge(1, 32);
    for (int trial = 0; trial < 300; ++trial) {
        const GemmShape s{dim(rng), dim(rng), dim(rng)};
        const auto a = array_of(edge(rng), edge(rng));
        for (Dataflow df : kAllDataflows) {
            const auto r = analytical_cycles(s, a, df);
            CHECK(r.utilization > 0.0);
            CHECK(r.utilization <= 1.0);
        }
    }
    // Single full fold under OS: k / (k + 2r + c - 2).
    for (Count r : {1, 4, 8}) {
        for (Count c : {1, 3, 8}) {
            for (Count k : {1, 7, 64}) {
                const auto rep = analytical_cycles({r, k, c}, array_of(r, c), Dataflow::OS);
                CHECK(rep.utilization == Catch::Approx(double(k) / double(k + 2 * r + c - 2)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("memory access examples", "[dataflow]") {
    const auto os = analytical_cycles({2, 2, 2}, array_of(2, 2), Dataflow::OS).memory;
    CHECK(os == MemoryAccesses{4, 4, 4, 0});

    const auto ws = analytical_cycles({10, 3, 4}, array_of(4, 4), Dataflow::WS).memory;
    CHECK(ws.sram_reads_filter == 3 * 4);
    CHECK(ws.psum_spill_accesses == 0);

    const auto is = plan_folds({6, 5, 7}, array_of(4, 8), Dataflow::IS);
    REQUIRE(is.row_folds == 2);
    CHECK(count_memory_accesses({6, 5, 7}, is).psum_spill_accesses == 2 * 6 * 7);
}

TEST_CASE("memory access counts agree with a brute-force tally", "[dataflow]") {
    std::mt19937 rng(19);
    std::uniform_int_distribution<Count> dim(1, 20);
    std::uniform_int_distribution<Count> edge(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const GemmShape s{dim(rng), dim(rng), dim(rng)};
        const auto a = array_of(edge(rng), edge(rng));
        for (Dataflow df : kAllDataflows) {
            CHECK(count_memory_accesses(s, plan_folds(s, a, df)) == brute_force_accesses(s, a, df));
        }
    }
}
