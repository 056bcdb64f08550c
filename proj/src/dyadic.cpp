#include "credence/dyadic.hpp"

#include "credence/errors.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

namespace credence {

namespace {

using u128 = unsigned __int128;

// Strips trailing zero bits so the numerator is odd.
void reduce(std::uint64_t& num, int& exp) {
    if (num == 0) {
        exp = 0;
        return;
    }
    int tz = std::countr_zero(num);
    int shift = std::min(tz, exp);
    num >>= shift;
    exp -= shift;
}

}  // namespace

Dyadic::Dyadic(std::uint64_t num, int exp) {
    if (exp < 0) throw Error(ErrorCode::BadParams, "negative dyadic exponent");
    reduce(num, exp);
    if (exp > kMaxDyadicExponent) {
        throw Error(ErrorCode::DepthLimit,
                    "dyadic exponent " + std::to_string(exp) + " exceeds cap");
    }
    // value <= 1  <=>  num <= 2^exp
    if (exp < 64 && num > (std::uint64_t{1} << exp)) {
        throw Error(ErrorCode::BadParams, "dyadic endpoint outside [0, 1]");
    }
    num_ = num;
    exp_ = exp;
}

unsigned __int128 Dyadic::scaled(int k) const {
    return static_cast<u128>(num_) << (k - exp_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    int k = std::max(a.exp_, b.exp_);
    u128 x = a.scaled(k);
    u128 y = b.scaled(k);
    if (x < y) return std::strong_ordering::less;
    if (x > y) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Dyadic midpoint(const Dyadic& a, const Dyadic& b) {
    int k = std::max(a.exp_, b.exp_);
    u128 sum = a.scaled(k) + b.scaled(k);
    int exp = k + 1;
    while (exp > 0 && (sum & 1) == 0) {
        sum >>= 1;
        --exp;
    }
    if (sum == 0) return Dyadic();
    if (exp > kMaxDyadicExponent) {
        throw Error(ErrorCode::DepthLimit, "midpoint needs more than 64 bits");
    }
    return Dyadic(static_cast<std::uint64_t>(sum), exp);
}

Rational Dyadic::to_rational() const {
    mpz_class num;
    mpz_import(num.get_mpz_t(), 1, 1, sizeof(num_), 0, 0, &num_);
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_));
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string Dyadic::to_string() const {
    return std::to_string(num_) + "/2^" + std::to_string(exp_);
}

Dyadic Dyadic::parse(std::string_view text) {
    Rational r = parse_rational(text);
    if (r < 0 || r > 1) throw Error(ErrorCode::Parse, "dyadic endpoint outside [0,1]: " + std::string(text));
    mpz_class den = r.get_den();
    if (mpz_popcount(den.get_mpz_t()) != 1) {
        throw Error(ErrorCode::Parse, "endpoint is not dyadic: " + std::string(text));
    }
    auto exp = static_cast<int>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
    if (exp > kMaxDyadicExponent) throw Error(ErrorCode::DepthLimit, "endpoint too fine: " + std::string(text));
    mpz_class num = r.get_num();
    std::uint64_t n = 0;
    if (num != 0) {
        std::size_t count = 0;
        mpz_export(&n, &count, 1, sizeof(n), 0, 0, num.get_mpz_t());
    }
    return Dyadic(n, exp);
}

DyadicEvent::DyadicEvent(std::vector<Interval> intervals) {
    for (const auto& iv : intervals) {
        if (!(iv.lo < iv.hi)) throw Error(ErrorCode::BadParams, "interval must satisfy lo < hi");
    }
    std::sort(intervals.begin(), intervals.end());
    for (const auto& iv : intervals) {
        if (!intervals_.empty() && iv.lo <= intervals_.back().hi) {
            intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
        } else {
            intervals_.push_back(iv);
        }
    }
}

DyadicEvent DyadicEvent::omega() {
    DyadicEvent e;
    e.intervals_.push_back({Dyadic::zero(), Dyadic::one()});
    return e;
}

DyadicEvent DyadicEvent::interval(Dyadic lo, Dyadic hi) {
    if (lo == hi) return DyadicEvent();
    return DyadicEvent({Interval{lo, hi}});
}

bool DyadicEvent::is_omega() const {
    return intervals_.size() == 1 && intervals_[0].lo == Dyadic::zero() &&
           intervals_[0].hi == Dyadic::one();
}

DyadicEvent DyadicEvent::complement() const {
    DyadicEvent out;
    Dyadic cursor = Dyadic::zero();
    for (const auto& iv : intervals_) {
        if (cursor < iv.lo) out.intervals_.push_back({cursor, iv.lo});
        cursor = iv.hi;
    }
    if (cursor < Dyadic::one()) out.intervals_.push_back({cursor, Dyadic::one()});
    return out;
}

DyadicEvent operator|(const DyadicEvent& a, const DyadicEvent& b) {
    std::vector<Interval> all = a.intervals_;
    all.insert(all.end(), b.intervals_.begin(), b.intervals_.end());
    return DyadicEvent(std::move(all));
}

DyadicEvent operator&(const DyadicEvent& a, const DyadicEvent& b) {
    DyadicEvent out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.intervals_.size() && j < b.intervals_.size()) {
        const auto& x = a.intervals_[i];
        const auto& y = b.intervals_[j];
        Dyadic lo = std::max(x.lo, y.lo);
        Dyadic hi = std::min(x.hi, y.hi);
        if (lo < hi) out.intervals_.push_back({lo, hi});
        if (x.hi < y.hi) {
            ++i;
        } else {
            ++j;
        }
    }
    // Pieces from a sweep are disjoint but may touch; re-normalize.
    return DyadicEvent(std::move(out.intervals_));
}

DyadicEvent operator-(const DyadicEvent& a, const DyadicEvent& b) {
    return a & b.complement();
}

bool DyadicEvent::contains(const DyadicEvent& other) const {
    return (other & *this) == other;
}

bool DyadicEvent::disjoint(const DyadicEvent& other) const {
    return (other & *this).is_empty();
}

Rational DyadicEvent::length() const {
    Rational total = 0;
    for (const auto& iv : intervals_) total += iv.hi.to_rational() - iv.lo.to_rational();
    return total;
}

int DyadicEvent::depth() const {
    int d = 0;
    for (const auto& iv : intervals_) d = std::max({d, iv.lo.exponent(), iv.hi.exponent()});
    return d;
}

DyadicAlgebra::DyadicAlgebra(int depth_cap) : depth_cap_(depth_cap) {
    if (depth_cap < 0 || depth_cap > kMaxDyadicExponent) {
        throw Error(ErrorCode::BadParams, "depth cap must lie in [0, 64]");
    }
}

DyadicEvent DyadicAlgebra::cell(int k, std::uint64_t j) const {
    if (k < 0 || k > depth_cap_) throw Error(ErrorCode::DepthLimit, "refinement depth exceeds cap");
    if (k < 64 && j >= (std::uint64_t{1} << k)) throw Error(ErrorCode::BadParams, "cell index out of range");
    Dyadic lo(j, k);
    bool last = k == 64 ? j == UINT64_MAX : j + 1 == (std::uint64_t{1} << k);
    Dyadic hi = last ? Dyadic::one() : Dyadic(j + 1, k);
    return DyadicEvent::interval(lo, hi);
}

std::vector<DyadicEvent> DyadicAlgebra::refine(int k) const {
    if (k < 0) throw Error(ErrorCode::BadParams, "refinement depth must be non-negative");
    if (k > depth_cap_) {
        throw Error(ErrorCode::DepthLimit,
                    "refinement depth " + std::to_string(k) + " exceeds cap " + std::to_string(depth_cap_));
    }
    if (k > kMaxMaterializedDepth) {
        throw Error(ErrorCode::DepthLimit, "refusing to materialize more than 2^24 cells");
    }
    std::vector<DyadicEvent> cells;
    std::uint64_t count = std::uint64_t{1} << k;
    cells.reserve(count);
    for (std::uint64_t j = 0; j < count; ++j) cells.push_back(cell(k, j));
    return cells;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

DyadicEvent parse_term(std::string_view term) {
    term = trim(term);
    if (term == "omega" || term == "Ω" || term == "all") return DyadicEvent::omega();
    if (term == "empty" || term == "∅" || term == "none") return DyadicEvent::empty();
    if (term.substr(0, 5) == "coin:") {
        auto flips = term.substr(5);
        std::uint64_t j = 0;
        int k = 0;
        for (char c : flips) {
            if (c == ',' || c == ' ') continue;
            if (c != 'H' && c != 'T') throw Error(ErrorCode::Parse, "coin flips must be H or T");
            j = (j << 1) | (c == 'T' ? 1u : 0u);
            ++k;
        }
        if (k > 63) throw Error(ErrorCode::DepthLimit, "too many coin flips");
        return DyadicAlgebra().cell(k, j);
    }
    if (term.size() < 5 || term.front() != '[' || term.back() != ')') {
        throw Error(ErrorCode::Parse, "expected [lo,hi): '" + std::string(term) + "'");
    }
    auto body = term.substr(1, term.size() - 2);
    auto comma = body.find(',');
    if (comma == std::string_view::npos) throw Error(ErrorCode::Parse, "expected [lo,hi)");
    Dyadic lo = Dyadic::parse(trim(body.substr(0, comma)));
    Dyadic hi = Dyadic::parse(trim(body.substr(comma + 1)));
    if (hi < lo) throw Error(ErrorCode::Parse, "interval endpoints reversed");
    return DyadicEvent::interval(lo, hi);
}

}  // namespace

DyadicEvent parse_event_expression(std::string_view text) {
    std::string normalized;
    normalized.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text.substr(i, 3) == "∪") {
            normalized.push_back('|');
            i += 2;
        } else if (text[i] == '+' || text[i] == 'u' || text[i] == 'U') {
            normalized.push_back('|');
        } else {
            normalized.push_back(text[i]);
        }
    }
    DyadicEvent result;
    std::string_view rest = normalized;
    if (trim(rest).empty()) throw Error(ErrorCode::Parse, "empty event expression");
    while (true) {
        auto bar = rest.find('|');
        result = result | parse_term(rest.substr(0, bar));
        if (bar == std::string_view::npos) break;
        rest.remove_prefix(bar + 1);
    }
    return result;
}

std::string to_expression(const DyadicEvent& event) {
    if (event.is_empty()) return "empty";
    std::ostringstream out;
    bool first = true;
    for (const auto& iv : event.intervals()) {
        if (!first) out << " | ";
        first = false;
        out << '[' << iv.lo.to_rational().get_str() << ',' << iv.hi.to_rational().get_str() << ')';
    }
    return out.str();
}

namespace {

// Splits [lo, hi) into maximal aligned dyadic blocks.
void aligned_blocks(const Interval& iv, std::vector<std::pair<std::uint64_t, int>>& out) {
    int k = std::max(iv.lo.exponent(), iv.hi.exponent());
    u128 a = iv.lo.scaled(k);
    u128 b = iv.hi.scaled(k);
    while (a < b) {
        // largest block size 2^s with a aligned and a + 2^s <= b
        int s = 0;
        while (s < k && ((a >> s) & 1) == 0 && a + (u128{1} << (s + 1)) <= b) ++s;
        out.emplace_back(static_cast<std::uint64_t>(a >> s), k - s);
        a += u128{1} << s;
    }
}

}  // namespace

std::string coin_phrase(const DyadicEvent& event) {
    if (event.is_empty()) return "never";
    if (event.is_omega()) return "always";
    std::vector<std::pair<std::uint64_t, int>> blocks;
    for (const auto& iv : event.intervals()) aligned_blocks(iv, blocks);
    std::ostringstream out;
    bool first = true;
    for (auto [j, k] : blocks) {
        if (!first) out << " or ";
        first = false;
        if (k == 1) {
            out << "the first flip lands ";
        } else {
            out << "the first " << k << " flips land ";
        }
        for (int bit = k - 1; bit >= 0; --bit) {
            out << (((j >> bit) & 1) ? 'T' : 'H');
            if (bit > 0) out << ',';
        }
    }
    return out.str();
}

}  // namespace credence
