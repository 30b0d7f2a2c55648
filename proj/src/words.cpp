#include "kleinian/words.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace kleinian {

namespace {

constexpr double rounding_residual_limit = 1e-6;
constexpr double reverify_rel_tolerance = 1e-7;
constexpr int reverify_points = 64;

void push_reduced(std::vector<word_syllable>& out, char letter, long long exponent)
{
    if (exponent == 0)
        return;
    if (!out.empty() && out.back().letter == letter) {
        long long merged = out.back().exponent + exponent;
        out.pop_back();
        push_reduced(out, letter, merged);
        return;
    }
    if (exponent > std::numeric_limits<int>::max() || exponent < std::numeric_limits<int>::min())
        throw std::invalid_argument("word exponent out of range");
    out.push_back({letter, static_cast<int>(exponent)});
}

group_word reduce(const std::vector<word_syllable>& raw)
{
    group_word w;
    for (const auto& s : raw)
        push_reduced(w.syllables, s.letter, s.exponent);
    return w;
}

[[noreturn]] void parse_fail(const std::string& what, std::size_t pos)
{
    std::ostringstream msg;
    msg << "word syntax error at position " << pos << ": " << what;
    throw std::invalid_argument(msg.str());
}

moebius_map integer_power(const moebius_map& m, int e)
{
    moebius_map base = e < 0 ? m.inverse() : m;
    moebius_map acc;
    for (int i = 0; i < std::abs(e); ++i)
        acc = compose(acc, base);
    return acc;
}

long long checked_cast(__int128 v, const char* what)
{
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw std::overflow_error(std::string(what) + ": coefficient exceeds 64-bit range");
    return static_cast<long long>(v);
}

using wide_poly = std::map<std::pair<int, int>, __int128>;

void wide_add(wide_poly& dst, const wide_poly& src, __int128 scale, int beta_shift)
{
    for (const auto& [key, c] : src) {
        __int128 prod = c * scale; /* |coeffs| kept below 2^63, no overflow in 128 bits */
        auto shifted = std::make_pair(key.first, key.second + beta_shift);
        dst[shifted] += prod;
        checked_cast(dst[shifted], "polynomial composition");
    }
}

wide_poly wide_multiply(const wide_poly& lhs, const wide_poly& rhs)
{
    wide_poly out;
    for (const auto& [ka, ca] : lhs)
        for (const auto& [kb, cb] : rhs) {
            auto key = std::make_pair(ka.first + kb.first, ka.second + kb.second);
            out[key] += ca * cb;
            checked_cast(out[key], "polynomial composition");
        }
    return out;
}

trace_polynomial from_wide(const wide_poly& p)
{
    trace_polynomial out;
    for (const auto& [key, c] : p) {
        if (c == 0)
            continue;
        out.coeffs[key] = checked_cast(c, "polynomial composition");
        out.z_degree = std::max(out.z_degree, key.first);
        out.beta_degree = std::max(out.beta_degree, key.second);
    }
    return out;
}

} // namespace

group_word group_word::inverse() const
{
    group_word out;
    out.syllables.reserve(syllables.size());
    for (auto it = syllables.rbegin(); it != syllables.rend(); ++it)
        out.syllables.push_back({it->letter, -it->exponent});
    return out;
}

int group_word::length() const
{
    int n = 0;
    for (const auto& s : syllables)
        n += std::abs(s.exponent);
    return n;
}

group_word parse_word(const std::string& text)
{
    std::vector<word_syllable> raw;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        char letter;
        int sign;
        switch (c) {
        case 'a': letter = 'a'; sign = 1; break;
        case 'A': letter = 'a'; sign = -1; break;
        case 'b': letter = 'b'; sign = 1; break;
        case 'B': letter = 'b'; sign = -1; break;
        default:
            parse_fail(std::string("unexpected character '") + c + "'", i);
        }
        std::size_t letter_pos = i;
        ++i;
        long long exponent = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            bool negative = false;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
                negative = text[i] == '-';
                ++i;
            }
            if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                parse_fail("expected digits after '^'", i);
            long long mag = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                mag = mag * 10 + (text[i] - '0');
                if (mag > std::numeric_limits<int>::max())
                    parse_fail("exponent too large", i);
                ++i;
            }
            exponent = negative ? -mag : mag;
        }
        (void)letter_pos;
        raw.push_back({letter, static_cast<int>(sign * exponent)});
    }
    group_word w = reduce(raw);
    if (w.empty())
        parse_fail("word reduces to the identity", text.size());
    return w;
}

std::string word_to_string(const group_word& w)
{
    std::ostringstream out;
    for (const auto& s : w.syllables) {
        char lower = s.letter;
        char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(lower)));
        if (s.exponent == 1) {
            out << lower;
        } else if (s.exponent == -1) {
            out << upper;
        } else if (s.exponent > 0) {
            out << lower << '^' << s.exponent;
        } else {
            out << upper << '^' << -s.exponent;
        }
    }
    return out.str();
}

bool is_good(const group_word& w)
{
    const auto& s = w.syllables;
    if (s.empty() || s.size() % 2 == 0)
        return false;
    if (s.front().letter != 'a' || s.back().letter != 'a')
        return false;
    int expected_sign = s.front().exponent;
    if (std::abs(expected_sign) != 1)
        return false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char want = i % 2 == 0 ? 'a' : 'b';
        if (s[i].letter != want)
            return false;
        if (want == 'a') {
            if (s[i].exponent != expected_sign)
                return false;
            expected_sign = -expected_sign;
        }
        /* b-exponents are nonzero by free reduction */
    }
    return true;
}

group_word reduce_mod_involution(const group_word& w)
{
    std::vector<word_syllable> raw;
    for (const auto& s : w.syllables) {
        if (s.letter == 'a') {
            if (s.exponent % 2 != 0)
                raw.push_back({'a', 1});
        } else {
            raw.push_back(s);
        }
    }
    return reduce(raw);
}

bool is_good_under_involution(const group_word& w)
{
    group_word r = reduce_mod_involution(w);
    return !r.empty() && r.syllables.front().letter == 'a' && r.syllables.back().letter == 'a';
}

good_word make_good(const group_word& w)
{
    if (is_good(w))
        return {w, true};
    if (is_good_under_involution(w))
        return {w, false};
    throw std::domain_error("word is not good: it must begin and end with the letter a "
                            "(after imposing a^2 = 1 at the weakest)");
}

good_word compose_words(const good_word& w1, const good_word& w2)
{
    const auto& inner = w2.word.syllables;
    if (inner.empty() || inner.front().letter != 'a' || inner.back().letter != 'a')
        throw std::domain_error("composition requires the inner word to begin and end "
                                "with the letter a");
    std::vector<word_syllable> raw;
    group_word inner_inverse = w2.word.inverse();
    for (const auto& s : w1.word.syllables) {
        if (s.letter == 'b') {
            raw.push_back(s);
            continue;
        }
        const group_word& block = s.exponent > 0 ? w2.word : inner_inverse;
        for (int rep = 0; rep < std::abs(s.exponent); ++rep)
            raw.insert(raw.end(), block.syllables.begin(), block.syllables.end());
    }
    group_word composed = reduce(raw);
    if (composed.empty())
        throw std::domain_error("composition reduced to the identity");
    good_word out = make_good(composed);
    out.strictly_good = out.strictly_good && w1.strictly_good && w2.strictly_good;
    return out;
}

cplx evaluate_gamma(const group_word& w, const trace_params& params)
{
    realized_pair pair = realize(params);
    /* binding: the letter a is the generator g, the letter b is f */
    moebius_map image;
    for (const auto& s : w.syllables) {
        const moebius_map& base = s.letter == 'a' ? pair.g : pair.f;
        image = compose(image, integer_power(base, s.exponent));
    }
    return gamma(pair.f, image);
}

cplx evaluate_gamma(const good_word& w, const trace_params& params)
{
    return evaluate_gamma(w.word, params);
}

cplx trace_polynomial::eval(cplx z, cplx beta) const
{
    /* Horner in z over beta-polynomials, assembled from the sparse terms */
    std::vector<cplx> zc = at_beta(beta);
    cplx acc = 0;
    for (auto it = zc.rbegin(); it != zc.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

std::vector<cplx> trace_polynomial::at_beta(cplx beta) const
{
    std::vector<std::vector<long long>> rows(static_cast<std::size_t>(z_degree) + 1);
    for (const auto& [key, c] : coeffs) {
        auto& row = rows[static_cast<std::size_t>(key.first)];
        if (static_cast<int>(row.size()) <= key.second)
            row.resize(static_cast<std::size_t>(key.second) + 1, 0);
        row[static_cast<std::size_t>(key.second)] = c;
    }
    std::vector<cplx> out(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
        cplx acc = 0;
        for (auto it = rows[j].rbegin(); it != rows[j].rend(); ++it)
            acc = acc * beta + static_cast<double>(*it);
        out[j] = acc;
    }
    return out;
}

std::string trace_polynomial::to_json() const
{
    std::ostringstream out;
    out << '[';
    bool first = true;
    for (const auto& [key, c] : coeffs) {
        if (!first)
            out << ',';
        first = false;
        out << "{\"zdeg\":" << key.first << ",\"bdeg\":" << key.second
            << ",\"coeff\":" << c << '}';
    }
    out << ']';
    return out.str();
}

trace_polynomial compile_trace_polynomial(const good_word& w, int degree_hint)
{
    group_word reduced = reduce_mod_involution(w.word);
    int z_bound = 0;
    int beta_bound = 0;
    for (const auto& s : reduced.syllables) {
        if (s.letter == 'a')
            z_bound += std::abs(s.exponent);
        else
            beta_bound += std::abs(s.exponent);
    }
    if (degree_hint >= 0) {
        z_bound = degree_hint;
        beta_bound = degree_hint;
    }
    if (z_bound < 1)
        throw std::domain_error("degree bound in z must be at least 1");

    const int nz = z_bound + 1;
    const int nb = beta_bound + 1;

    /* evaluate on the tensor grid of roots of unity; every node is away
     * from the excluded locus gamma == 0 */
    std::vector<std::vector<cplx>> values(static_cast<std::size_t>(nz),
                                          std::vector<cplx>(static_cast<std::size_t>(nb)));
    for (int k = 0; k < nz; ++k) {
        cplx zk = std::polar(1.0, 2.0 * M_PI * k / nz);
        for (int l = 0; l < nb; ++l) {
            cplx bl = std::polar(1.0, 2.0 * M_PI * l / nb);
            values[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] =
                evaluate_gamma(w, {zk, bl, cplx(-4.0, 0.0)});
        }
    }

    /* inverse DFT in z for each fixed beta node, then in beta for each
     * z-degree */
    std::vector<std::vector<cplx>> zcoef(static_cast<std::size_t>(nz),
                                         std::vector<cplx>(static_cast<std::size_t>(nb)));
    for (int l = 0; l < nb; ++l)
        for (int j = 0; j < nz; ++j) {
            cplx acc = 0;
            for (int k = 0; k < nz; ++k)
                acc += values[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] *
                       std::polar(1.0, -2.0 * M_PI * j * k / nz);
            zcoef[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] =
                acc / static_cast<double>(nz);
        }

    trace_polynomial out;
    double worst_residual = 0.0;
    for (int j = 0; j < nz; ++j)
        for (int i = 0; i < nb; ++i) {
            cplx acc = 0;
            for (int l = 0; l < nb; ++l)
                acc += zcoef[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] *
                       std::polar(1.0, -2.0 * M_PI * i * l / nb);
            acc /= static_cast<double>(nb);
            long long rounded = std::llround(acc.real());
            worst_residual = std::max(worst_residual,
                                      std::abs(acc - cplx(static_cast<double>(rounded), 0.0)));
            if (rounded != 0) {
                out.coeffs[{j, i}] = rounded;
                out.z_degree = std::max(out.z_degree, j);
                out.beta_degree = std::max(out.beta_degree, i);
            }
        }
    if (worst_residual > rounding_residual_limit) {
        std::ostringstream msg;
        msg << "interpolation residual " << worst_residual
            << " exceeds " << rounding_residual_limit
            << "; degree bounds too small or word not good";
        throw std::runtime_error(msg.str());
    }
    for (const auto& [key, c] : out.coeffs)
        if (key.first == 0 && c != 0)
            throw std::runtime_error("recovered polynomial has a term constant in z; "
                                     "expected p(0, beta) == 0");

    /* re-verify against fresh matrix evaluations at moderate magnitudes */
    std::mt19937 gen(0x90a7dULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < reverify_points; ++t) {
        cplx z = std::polar(0.2 + unit(gen), 2.0 * M_PI * unit(gen));
        cplx beta = std::polar(1.5 * unit(gen), 2.0 * M_PI * unit(gen));
        cplx direct = evaluate_gamma(w, {z, beta, cplx(-4.0, 0.0)});
        cplx poly = out.eval(z, beta);
        double scale = std::max(1.0, std::abs(direct));
        if (std::abs(direct - poly) > reverify_rel_tolerance * scale) {
            std::ostringstream msg;
            msg << "re-verification failed: |direct - polynomial| = "
                << std::abs(direct - poly) << " at gamma = " << z << ", beta = " << beta;
            throw std::runtime_error(msg.str());
        }
    }
    return out;
}

trace_polynomial compose_polynomials(const trace_polynomial& p1, const trace_polynomial& p2)
{
    wide_poly inner;
    for (const auto& [key, c] : p2.coeffs)
        inner[key] = c;

    /* powers of the inner polynomial up to the outer z-degree */
    std::vector<wide_poly> powers(static_cast<std::size_t>(p1.z_degree) + 1);
    powers[0][{0, 0}] = 1;
    for (int j = 1; j <= p1.z_degree; ++j)
        powers[static_cast<std::size_t>(j)] =
            wide_multiply(powers[static_cast<std::size_t>(j) - 1], inner);

    wide_poly acc;
    for (const auto& [key, c] : p1.coeffs)
        wide_add(acc, powers[static_cast<std::size_t>(key.first)], c, key.second);
    return from_wide(acc);
}

trace_polynomial specialize_beta(const trace_polynomial& p, long long beta_value)
{
    std::map<int, __int128> rows;
    for (const auto& [key, c] : p.coeffs) {
        __int128 scaled = c;
        for (int i = 0; i < key.second; ++i) {
            scaled *= beta_value;
            checked_cast(scaled, "beta specialization");
        }
        rows[key.first] += scaled;
        checked_cast(rows[key.first], "beta specialization");
    }
    trace_polynomial out;
    for (const auto& [zdeg, c] : rows) {
        if (c == 0)
            continue;
        out.coeffs[{zdeg, 0}] = checked_cast(c, "beta specialization");
        out.z_degree = std::max(out.z_degree, zdeg);
    }
    return out;
}

group_word order42_word_letters(order42_word k)
{
    switch (k) {
    case order42_word::gf_pow4_g:
        return parse_word("ababababa");
    case order42_word::gf_pow3_g:
        return parse_word("abababa");
    case order42_word::gf_pow3_gfinv_pow3_g:
        return parse_word("abababaBaBaBa");
    case order42_word::gf_pow3_gfinv_pow3_gf_pow3_g:
        return parse_word("abababaBaBaBabababa");
    }
    throw std::domain_error("unknown order-4/order-2 word selector");
}

trace_polynomial order42_identity(order42_word k)
{
    trace_polynomial full = compile_trace_polynomial(make_good(order42_word_letters(k)));
    return specialize_beta(full, -2);
}

} // namespace kleinian
