#include "credence/rational.hpp"

#include "credence/errors.hpp"

#include <cctype>

namespace credence {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::OverlappingEvents: return "OverlappingEvents";
        case ErrorCode::NonExhaustive: return "NonExhaustive";
        case ErrorCode::UnknownOutcome: return "UnknownOutcome";
        case ErrorCode::DepthLimit: return "DepthLimit";
        case ErrorCode::Degenerate: return "Degenerate";
        case ErrorCode::InconsistentOutcomeOrder: return "InconsistentOutcomeOrder";
        case ErrorCode::AtomBoundExceeded: return "AtomBoundExceeded";
        case ErrorCode::QueryBudgetExceeded: return "QueryBudgetExceeded";
        case ErrorCode::DegenerateUtilities: return "DegenerateUtilities";
        case ErrorCode::NotRepresentable: return "NotRepresentable";
        case ErrorCode::NotQualitative: return "NotQualitative";
        case ErrorCode::NoMedianFound: return "NoMedianFound";
        case ErrorCode::InconsistentAnswers: return "InconsistentAnswers";
        case ErrorCode::BadParams: return "BadParams";
        case ErrorCode::UnknownAct: return "UnknownAct";
        case ErrorCode::MissingProbability: return "MissingProbability";
        case ErrorCode::ElicitationFailed: return "ElicitationFailed";
        case ErrorCode::SessionComplete: return "SessionComplete";
        case ErrorCode::SessionInconsistent: return "SessionInconsistent";
        case ErrorCode::StaleQuery: return "StaleQuery";
        case ErrorCode::UnknownSession: return "UnknownSession";
        case ErrorCode::NoDataYet: return "NoDataYet";
        case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

[[noreturn]] void bad(std::string_view text) {
    throw Error(ErrorCode::Parse, "not a rational: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) bad(text);

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num)) bad(text);
        mpz_class denominator;
        if (den.size() > 2 && den.substr(0, 2) == "2^") {
            auto exp = den.substr(2);
            if (!all_digits(exp) || exp.size() > 4) bad(text);
            denominator = 1;
            mpz_mul_2exp(denominator.get_mpz_t(), denominator.get_mpz_t(),
                         static_cast<mp_bitcnt_t>(std::stoul(std::string(exp))));
        } else {
            if (!all_digits(den)) bad(text);
            denominator = mpz_class(std::string(den));
        }
        if (denominator == 0) bad(text);
        value = Rational(mpz_class(std::string(num)), denominator);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto whole = s.substr(0, dot);
        auto frac = s.substr(dot + 1);
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
            (whole.empty() && frac.empty())) {
            bad(text);
        }
        mpz_class scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        mpz_class w = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole));
        mpz_class f = frac.empty() ? mpz_class(0) : mpz_class(std::string(frac));
        value = Rational(w * scale + f, scale);
    } else {
        if (!all_digits(s)) bad(text);
        value = Rational(mpz_class(std::string(s)));
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
    Rational v = value;
    v.canonicalize();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

int exponent_for_tolerance(const Rational& eps) {
    if (eps <= 0) throw Error(ErrorCode::BadParams, "tolerance must be positive");
    int k = 0;
    Rational width = 1;
    while (width > eps) {
        width /= 2;
        ++k;
    }
    return k;
}

Rational pow2_inverse(int k) {
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    return Rational(mpz_class(1), den);
}

}  // namespace credence
