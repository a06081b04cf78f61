#include "nonsmooth/weights.hpp"

#include "nonsmooth/error.hpp"

#include <sstream>

namespace nonsmooth {

namespace {

__extension__ using Wide = __int128;

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>((static_cast<Wide>(a) * b) % p);
}

void require_valid(const OddPrime& p, const WeightCP2& alpha) {
    if (!is_valid_cp2(p, alpha)) {
        throw Error(ErrorCode::InvalidWeight, to_string(alpha) + " is not a weight for p=" +
                                                  std::to_string(p.value()));
    }
}

// Residues of the three entries and of |alpha|/2.
struct Residues {
    std::int64_t r0, r1, r2, half;
};

Residues residues_of(const OddPrime& p, const WeightCP2& alpha) {
    return {p.residue(alpha.a[0]), p.residue(alpha.a[1]), p.residue(alpha.a[2]),
            p.residue(alpha.total() / 2)};
}

// Calls visit(t) with the shifted weighted residue of every triplet, in
// lexicographic (n0, n1) order.
template <typename Visit>
void for_each_triplet(const OddPrime& p, const Residues& r, Visit&& visit) {
    const std::int64_t pv = p.value();
    const std::int64_t h = (pv - 3) / 2;
    const std::int64_t step = p.residue(r.r1 - r.r2);
    for (std::int64_t n0 = 0; n0 <= h; ++n0) {
        // n1 = 0, n2 = h - n0; each n1 increment moves one unit from n2 to n1.
        std::int64_t t = (mul_mod(r.r0, n0, pv) + mul_mod(r.r2, h - n0, pv) + r.half) % pv;
        for (std::int64_t n1 = 0; n1 <= h - n0; ++n1) {
            visit(t);
            t += step;
            if (t >= pv) t -= pv;
        }
    }
}

// Differences and negations of entries must stay representable.
constexpr std::int64_t kMaxEntry = std::int64_t{1} << 61;

template <std::size_t N>
void require_in_range(const std::array<std::int64_t, N>& entries) {
    for (auto x : entries) {
        if (x > kMaxEntry || x < -kMaxEntry) {
            throw Error(ErrorCode::Overflow, "weight entry " + std::to_string(x) + " is too large");
        }
    }
}

}  // namespace

bool is_prime(std::int64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d <= n / d; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

OddPrime::OddPrime(std::int64_t n) : p_(n) {
    if (n < 5 || !is_prime(n)) {
        throw Error(ErrorCode::NotPrime, std::to_string(n) + " is not a prime >= 5");
    }
}

std::int64_t WeightCP2::total() const {
    std::int64_t s = 0;
    for (auto x : a) {
        if (__builtin_add_overflow(s, x, &s)) {
            throw Error(ErrorCode::Overflow, "weight total overflows 64 bits");
        }
    }
    return s;
}

std::string to_string(const WeightCP2& w) {
    std::ostringstream os;
    os << '(' << w.a[0] << ',' << w.a[1] << ',' << w.a[2] << ')';
    return os.str();
}

std::string to_string(const WeightS4& w) {
    std::ostringstream os;
    os << '(' << w.b[0] << ',' << w.b[1] << ')';
    return os.str();
}

WeightCP2 validate_weight_cp2(const OddPrime& p, std::array<std::int64_t, 3> a) {
    WeightCP2 w{a};
    require_in_range(a);
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (p.residue(a[i]) == p.residue(a[j])) {
                throw Error(ErrorCode::CongruentEntries,
                            to_string(w) + ": entries " + std::to_string(i) + " and " +
                                std::to_string(j) + " agree mod " + std::to_string(p.value()));
            }
        }
    }
    if (w.total() % 2 != 0) {
        throw Error(ErrorCode::OddTotal, to_string(w) + " has odd total");
    }
    return w;
}

WeightS4 validate_weight_s4(const OddPrime& p, std::array<std::int64_t, 2> b) {
    WeightS4 w{b};
    require_in_range(b);
    for (auto x : b) {
        if (p.residue(x) == 0) {
            throw Error(ErrorCode::ZeroEntry,
                        to_string(w) + " has an entry divisible by " + std::to_string(p.value()));
        }
    }
    return w;
}

bool is_valid_cp2(const OddPrime& p, const WeightCP2& w) noexcept {
    try {
        validate_weight_cp2(p, w.a);
        return true;
    } catch (const Error&) {
        return false;
    }
}

bool is_valid_s4(const OddPrime& p, const WeightS4& w) noexcept {
    try {
        validate_weight_s4(p, w.b);
        return true;
    } catch (const Error&) {
        return false;
    }
}

std::int64_t lattice_count(const OddPrime& p, const WeightCP2& alpha) {
    require_valid(p, alpha);
    std::int64_t count = 0;
    for_each_triplet(p, residues_of(p, alpha), [&](std::int64_t t) { count += (t == 0); });
    return count;
}

std::vector<std::int64_t> residue_spectrum(const OddPrime& p, const WeightCP2& alpha) {
    require_valid(p, alpha);
    std::vector<std::int64_t> spectrum(static_cast<std::size_t>(p.value()), 0);
    for_each_triplet(p, residues_of(p, alpha),
                     [&](std::int64_t t) { ++spectrum[static_cast<std::size_t>(t)]; });
    return spectrum;
}

std::optional<CountFamily> family_of(const WeightCP2& w) noexcept {
    if (w == family_weight(CountFamily::MinusOneZeroOne)) return CountFamily::MinusOneZeroOne;
    if (w == family_weight(CountFamily::MinusOneOneTwo)) return CountFamily::MinusOneOneTwo;
    return std::nullopt;
}

WeightCP2 family_weight(CountFamily family) noexcept {
    switch (family) {
        case CountFamily::MinusOneZeroOne: return WeightCP2{{-1, 0, 1}};
        case CountFamily::MinusOneOneTwo: return WeightCP2{{-1, 1, 2}};
    }
    return {};
}

TwelveSplit split_mod_twelve(const OddPrime& p) noexcept {
    const std::int64_t v = p.value();
    switch (v % 12) {
        case 1: return {(v - 1) / 12, 1};
        case 11: return {(v + 1) / 12, -1};
        case 5: return {(v - 5) / 12, 5};
        default: return {(v + 5) / 12, -5};  // v % 12 == 7
    }
}

std::int64_t closed_form_count(const OddPrime& p, CountFamily family) {
    const std::int64_t v = p.value();
    switch (family) {
        case CountFamily::MinusOneZeroOne:
            return v % 4 == 1 ? (v - 1) / 4 : (v + 1) / 4;
        case CountFamily::MinusOneOneTwo: {
            const auto [l, q] = split_mod_twelve(p);
            if (q == -5) return l - 1;
            if (q == 5) return l + 1;
            return l;
        }
    }
    throw Error(ErrorCode::UnsupportedFamily, "unknown family");
}

std::int64_t closed_form_count(const OddPrime& p, const WeightCP2& w) {
    const auto family = family_of(w);
    if (!family) {
        throw Error(ErrorCode::UnsupportedFamily,
                    "no closed form for " + to_string(w) + "; use lattice_count");
    }
    return closed_form_count(p, *family);
}

std::int64_t CountCache::count(const OddPrime& p, const WeightCP2& alpha) {
    require_valid(p, alpha);
    const Residues r = residues_of(p, alpha);
    const std::array<std::int64_t, 5> key{p.value(), r.r0, r.r1, r.r2, r.half};
    if (auto it = table_.find(key); it != table_.end()) return it->second;
    const std::int64_t n = lattice_count(p, alpha);
    table_.emplace(key, n);
    return n;
}

}  // namespace nonsmooth
