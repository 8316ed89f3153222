#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <set>

#include "drinfeld/isogeny.hpp"

using namespace drinfeld;

namespace {

using Vec = std::vector<PrimeCtx::Elem>;

/// straightforward deduplicated enumeration of s-dimensional subspaces:
/// run over all s-tuples of vectors, keep the independent ones, canonicalize
long brute_force_subspace_count(int r, int s, const PrimeCtx& P) {
    if (s == 0) return 1;
    long n = 1;
    for (int i = 0; i < r; ++i) n *= P.size();
    std::set<std::string> seen;
    std::vector<long> idx(s, 0);
    auto vec_of = [&](long v) {
        Vec x(r, P.zero());
        for (int j = 0; j < r; ++j) {
            x[j] = P.element(v % P.size());
            v /= P.size();
        }
        return x;
    };
    while (true) {
        std::vector<Vec> rows;
        for (int i = 0; i < s; ++i) rows.push_back(vec_of(idx[i]));
        // gaussian elimination to RREF
        int rr = 0;
        for (int col = 0; col < r && rr < s; ++col) {
            int pivot = -1;
            for (int i = rr; i < s; ++i)
                if (!P.is_zero(rows[i][col])) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) continue;
            std::swap(rows[rr], rows[pivot]);
            PrimeCtx::Elem iv = P.inv(rows[rr][col]);
            for (int j = 0; j < r; ++j) rows[rr][j] = P.mul(rows[rr][j], iv);
            for (int i = 0; i < s; ++i) {
                if (i == rr || P.is_zero(rows[i][col])) continue;
                PrimeCtx::Elem f = rows[i][col];
                for (int j = 0; j < r; ++j)
                    rows[i][j] = P.add(rows[i][j], P.neg(P.mul(f, rows[rr][j])));
            }
            ++rr;
        }
        if (rr == s) {
            std::string key;
            for (const Vec& v : rows)
                for (const PrimeCtx::Elem& e : v) key += std::to_string(P.index_of(e)) + ",";
            seen.insert(key);
        }
        int pos = s - 1;
        while (pos >= 0 && idx[pos] + 1 == n) idx[pos--] = 0;
        if (pos < 0) break;
        ++idx[pos];
    }
    return static_cast<long>(seen.size());
}

PrimeCtx make_P(long q, const std::vector<int>& coeffs) {
    int p = 2;
    while (q % p != 0) ++p;
    int e = 0;
    long t = q;
    while (t > 1) {
        t /= p;
        ++e;
    }
    const FieldCtx& F = FieldCtx::pinned(p, e);
    std::vector<FFElem> P;
    for (int c : coeffs) P.push_back(FFElem(F, c));
    return PrimeCtx(P, F, q);
}

}  // namespace

TEST_CASE("subspace counts match brute force") {
    struct Cell {
        long q;
        std::vector<int> P;
    };
    std::vector<Cell> cells = {
        {2, {0, 1}},        // P = T, |P| = 2
        {3, {0, 1}},        // |P| = 3
        {2, {1, 1, 1}},     // T^2+T+1, |P| = 4
        {2, {1, 1, 0, 1}},  // T^3+T+1, |P| = 8
        {3, {1, 0, 1}},     // T^2+1 over F_3, |P| = 9
    };
    for (const Cell& c : cells) {
        PrimeCtx P = make_P(c.q, c.P);
        for (int r = 2; r <= 4; ++r) {
            long pr = 1;
            for (int i = 0; i < r; ++i) pr *= P.size();
            if (pr > 4096) continue;
            for (int s = 0; s <= r; ++s) {
                double tuples = std::pow(static_cast<double>(pr), s);
                if (tuples > 300000) continue;
                long expect = brute_force_subspace_count(r, s, P);
                auto ms = enumerate_subspaces(r, s, P);
                INFO("q=" << c.q << " |P|=" << P.size() << " r=" << r << " s=" << s);
                CHECK(static_cast<long>(ms.size()) == expect);
                CHECK(static_cast<long>(ms.size()) == gaussian_binomial(r, s, P.size()));
            }
        }
    }
}

TEST_CASE("spec counts for r=3, |P|=2") {
    PrimeCtx P = make_P(2, {0, 1});
    CHECK(enumerate_subspaces(3, 1, P).size() == 7);
    CHECK(enumerate_subspaces(3, 2, P).size() == 7);
    CHECK(enumerate_subspaces(3, 3, P).size() == 1);
    long special = 0;
    for (const auto& m : enumerate_subspaces(3, 1, P)) special += m.is_special();
    CHECK(special == 3);
}

TEST_CASE("RREF structure and determinism") {
    PrimeCtx P = make_P(2, {1, 1, 1});
    auto ms = enumerate_subspaces(3, 2, P);
    CHECK(static_cast<long>(ms.size()) == gaussian_binomial(3, 2, 4));
    for (const auto& m : ms) {
        for (int i = 0; i < m.s; ++i) {
            int pc = m.pivots[i];
            CHECK(m.at(i, pc)[0].is_one());
            for (int j = 0; j < pc; ++j) CHECK(P.is_zero(m.at(i, j)));
            for (int i2 = 0; i2 < m.s; ++i2)
                if (i2 != i) CHECK(P.is_zero(m.at(i2, pc)));
        }
    }
    auto again = enumerate_subspaces(3, 2, P);
    for (size_t i = 0; i < ms.size(); ++i) CHECK(ms[i].str(P) == again[i].str(P));
}

TEST_CASE("special counts equal the lower-rank Gaussian binomial") {
    for (long q : {2L, 3L}) {
        PrimeCtx P = make_P(q, {0, 1});
        for (int r = 2; r <= 4; ++r)
            for (int s = 0; s <= r - 1; ++s) {
                long special = 0;
                for (const auto& m : enumerate_subspaces(r, s, P)) special += m.is_special();
                CHECK(special == gaussian_binomial(r - 1, s, P.size()));
            }
    }
}

TEST_CASE("s = r is the identity matrix only") {
    PrimeCtx P = make_P(2, {0, 1});
    auto ms = enumerate_subspaces(3, 3, P);
    REQUIRE(ms.size() == 1);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j)
                CHECK(ms[0].at(i, j)[0].is_one());
            else
                CHECK(P.is_zero(ms[0].at(i, j)));
        }
}

TEST_CASE("is_special examples") {
    PrimeCtx P = make_P(2, {0, 1});
    auto ms = enumerate_subspaces(3, 1, P);
    CHECK(ms[0].is_special());  // (1,0,0) comes first
    bool found_001 = false;
    for (const auto& m : ms) {
        if (m.pivots[0] == 2) {
            found_001 = true;
            CHECK_FALSE(m.is_special());
        }
    }
    CHECK(found_001);
}

TEST_CASE("F_P arithmetic") {
    PrimeCtx P = make_P(2, {1, 1, 1});
    for (long i = 0; i < P.size(); ++i) {
        PrimeCtx::Elem a = P.element(i);
        CHECK(P.index_of(a) == i);
        if (i) {
            PrimeCtx::Elem b = P.inv(a);
            PrimeCtx::Elem pr = P.mul(a, b);
            CHECK(P.index_of(pr) == P.index_of(P.one()));
        }
    }
    // T * T = T + 1 mod T^2+T+1
    PrimeCtx::Elem t = P.element(2);
    PrimeCtx::Elem t2 = P.mul(t, t);
    CHECK(P.str(t2) == "T+1");
}
