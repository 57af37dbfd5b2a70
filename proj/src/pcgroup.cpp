#include "pgrp/pcgroup.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "pgrp/error.hpp"
#include "pgrp/gfp.hpp"

namespace pgrp {

// -------------------------------------------------------------- Element

bool Element::is_identity() const noexcept {
    return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
}

std::size_t Element::leading_index() const noexcept {
    for (std::size_t i = 0; i < kMaxGens; ++i)
        if (exps_[i] != 0) return i;
    return kMaxGens;
}

std::size_t Element::hash() const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Exponent e : exps_) {
        h ^= e;
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

// -------------------------------------------------------- PcPresentation

PcPresentation::PcPresentation(std::uint32_t p, std::size_t ngens)
    : p_(p), ngens_(ngens), pow_(ngens), conj_(ngens * ngens) {
    gfp::require_prime(p);
    if (ngens > kMaxGens)
        throw DomainError("ngens " + std::to_string(ngens) + " exceeds cap " +
                          std::to_string(kMaxGens));
}

const Word& PcPresentation::conjugate(std::size_t j, std::size_t i) const {
    if (!(i < j && j < ngens_))
        throw InvariantError("conjugate relation requires i < j < ngens");
    return conj_[j * ngens_ + i];
}

void PcPresentation::validate_word(const Word& w, std::size_t floor, const std::string& what) const {
    std::size_t prev = floor;
    for (const Factor& f : w) {
        if (f.gen >= ngens_)
            throw InvariantError(what + ": generator " + std::to_string(f.gen + 1) + " out of range");
        if (f.exp == 0 || f.exp >= p_)
            throw InvariantError(what + ": exponent not in [1, p-1]");
        if (f.gen <= floor)
            throw InvariantError(what + ": tail generator " + std::to_string(f.gen + 1) +
                                 " must be deeper than " + std::to_string(floor + 1));
        if (f.gen <= prev && prev != floor)
            throw InvariantError(what + ": tail generators must be strictly increasing");
        prev = f.gen;
    }
}

void PcPresentation::set_power(std::size_t i, Word tail) {
    if (i >= ngens_) throw InvariantError("pow " + std::to_string(i + 1) + ": index out of range");
    validate_word(tail, i, "pow " + std::to_string(i + 1));
    pow_[i] = std::move(tail);
}

void PcPresentation::set_conjugate(std::size_t j, std::size_t i, Word tail) {
    const std::string what = "conj " + std::to_string(j + 1) + " " + std::to_string(i + 1);
    if (j >= ngens_ || i >= ngens_) throw InvariantError(what + ": index out of range");
    if (i >= j) throw InvariantError(what + ": requires i < j");
    validate_word(tail, j, what);
    conj_[j * ngens_ + i] = std::move(tail);
}

// --------------------------------------------------------------- parsing

namespace {

struct Token {
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
        } else if (c == ':') {
            out.push_back({":", i + 1});
            ++i;
        } else {
            std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
                   line[i] != ':')
                ++i;
            out.push_back({std::string(line.substr(start, i - start)), start + 1});
        }
    }
    return out;
}

long long parse_int(const Token& tok, std::size_t line, std::string_view text, std::size_t offset) {
    long long value = 0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || text.empty())
        throw ParseError(line, tok.column + offset, "expected an integer, got '" + std::string(text) + "'");
    return value;
}

std::size_t parse_index(const Token& tok, std::size_t line, std::size_t ngens) {
    const long long v = parse_int(tok, line, tok.text, 0);
    if (v < 1 || static_cast<std::size_t>(v) > ngens)
        throw InvariantError("line " + std::to_string(line) + ": generator index " + tok.text +
                             " out of range 1.." + std::to_string(ngens));
    return static_cast<std::size_t>(v - 1);
}

Word parse_word(const std::vector<Token>& toks, std::size_t from, std::size_t line, std::uint32_t p,
                std::size_t ngens) {
    Word w;
    for (std::size_t t = from; t < toks.size(); ++t) {
        const Token& tok = toks[t];
        std::string_view text = tok.text;
        const std::size_t caret = text.find('^');
        const std::string_view gen_text = text.substr(0, caret);
        const long long g = parse_int(tok, line, gen_text, 0);
        long long e = 1;
        if (caret != std::string_view::npos) e = parse_int(tok, line, text.substr(caret + 1), caret + 1);
        if (g < 1 || static_cast<std::size_t>(g) > ngens)
            throw InvariantError("line " + std::to_string(line) + ": generator index " +
                                 std::to_string(g) + " out of range 1.." + std::to_string(ngens));
        const Exponent r = gfp::reduce(e, p);
        if (!w.empty() && w.back().gen >= static_cast<std::size_t>(g - 1))
            throw InvariantError("line " + std::to_string(line) +
                                 ": word generators must be strictly increasing");
        if (r != 0) w.push_back({static_cast<std::size_t>(g - 1), r});
    }
    return w;
}

}  // namespace

PcPresentation parse_presentation(std::string_view text) {
    std::vector<std::pair<std::size_t, std::vector<Token>>> lines;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto toks = tokenize(line);
        if (!toks.empty()) lines.emplace_back(lineno, std::move(toks));
        pos = nl + 1;
    }

    auto expect_keyword = [&](std::size_t idx, const char* key) -> const std::vector<Token>& {
        if (idx >= lines.size())
            throw ParseError(lineno, 1, std::string("unexpected end of input, expected '") + key + "'");
        const auto& [ln, toks] = lines[idx];
        if (toks[0].text != key)
            throw ParseError(ln, toks[0].column, std::string("expected '") + key + "', got '" +
                                                     toks[0].text + "'");
        return toks;
    };

    {
        const auto& toks = expect_keyword(0, "pcgroup");
        if (toks.size() != 2 || toks[1].text != "v1")
            throw ParseError(lines[0].first, toks.size() > 1 ? toks[1].column : toks[0].column + 7,
                             "expected header 'pcgroup v1'");
    }
    long long p_value = 0;
    {
        const auto& toks = expect_keyword(1, "p");
        if (toks.size() != 2)
            throw ParseError(lines[1].first, toks[0].column, "expected 'p <prime>'");
        p_value = parse_int(toks[1], lines[1].first, toks[1].text, 0);
        if (p_value < 2 || p_value > static_cast<long long>(gfp::kMaxPrime) ||
            !gfp::is_prime(static_cast<std::uint32_t>(p_value)))
            throw ParseError(lines[1].first, toks[1].column,
                             "p must be a prime not exceeding 2^15");
    }
    long long n_value = 0;
    {
        const auto& toks = expect_keyword(2, "ngens");
        if (toks.size() != 2)
            throw ParseError(lines[2].first, toks[0].column, "expected 'ngens <n>'");
        n_value = parse_int(toks[1], lines[2].first, toks[1].text, 0);
        if (n_value < 0 || n_value > static_cast<long long>(kMaxGens))
            throw ParseError(lines[2].first, toks[1].column, "ngens must lie in 0..64");
    }
    const auto p = static_cast<std::uint32_t>(p_value);
    const auto n = static_cast<std::size_t>(n_value);
    PcPresentation pres(p, n);

    std::set<std::pair<std::size_t, std::size_t>> seen_pow, seen_conj;
    for (std::size_t idx = 3; idx < lines.size(); ++idx) {
        const auto& [ln, toks] = lines[idx];
        const std::string& kind = toks[0].text;
        if (kind == "pow") {
            if (toks.size() < 3 || toks[2].text != ":")
                throw ParseError(ln, toks.size() > 2 ? toks[2].column : toks.back().column,
                                 "expected 'pow <i> : <word>'");
            const std::size_t i = parse_index(toks[1], ln, n);
            if (!seen_pow.insert({i, 0}).second)
                throw DuplicateRelationError("line " + std::to_string(ln) + ": duplicate relation pow " +
                                             toks[1].text);
            Word w = parse_word(toks, 3, ln, p, n);
            try {
                pres.set_power(i, std::move(w));
            } catch (const DuplicateRelationError&) {
                throw;
            } catch (const InvariantError& e) {
                throw InvariantError("line " + std::to_string(ln) + ": " + e.what());
            }
        } else if (kind == "conj") {
            if (toks.size() < 4 || toks[3].text != ":")
                throw ParseError(ln, toks.size() > 3 ? toks[3].column : toks.back().column,
                                 "expected 'conj <j> <i> : <word>'");
            const std::size_t j = parse_index(toks[1], ln, n);
            const std::size_t i = parse_index(toks[2], ln, n);
            if (i >= j)
                throw InvariantError("line " + std::to_string(ln) + ": conj " + toks[1].text + " " +
                                     toks[2].text + " requires i < j");
            if (!seen_conj.insert({j, i}).second)
                throw DuplicateRelationError("line " + std::to_string(ln) + ": duplicate relation conj " +
                                             toks[1].text + " " + toks[2].text);
            Word w = parse_word(toks, 4, ln, p, n);
            try {
                pres.set_conjugate(j, i, std::move(w));
            } catch (const InvariantError& e) {
                throw InvariantError("line " + std::to_string(ln) + ": " + e.what());
            }
        } else {
            throw ParseError(ln, toks[0].column, "unknown directive '" + kind + "'");
        }
    }
    return pres;
}

PcPresentation load_presentation(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_presentation(buf.str());
}

namespace {

void write_word(std::ostream& os, const Word& w) {
    for (const Factor& f : w) {
        os << ' ' << f.gen + 1;
        if (f.exp != 1) os << '^' << f.exp;
    }
}

}  // namespace

std::string serialize(const PcPresentation& pres) {
    std::ostringstream os;
    os << "pcgroup v1\np " << pres.prime() << "\nngens " << pres.ngens() << '\n';
    for (std::size_t i = 0; i < pres.ngens(); ++i) {
        if (pres.power(i).empty()) continue;
        os << "pow " << i + 1 << " :";
        write_word(os, pres.power(i));
        os << '\n';
    }
    for (std::size_t j = 0; j < pres.ngens(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
            if (pres.conjugate(j, i).empty()) continue;
            os << "conj " << j + 1 << ' ' << i + 1 << " :";
            write_word(os, pres.conjugate(j, i));
            os << '\n';
        }
    return os.str();
}

// --------------------------------------------------------------- PcGroup

PcGroup::PcGroup(PcPresentation pres)
    : pres_(std::move(pres)),
      p_(pres_.prime()),
      n_(pres_.ngens()),
      pow_letters_(n_),
      conj_letters_(n_ * n_),
      conj_trivial_(n_ * n_, true),
      generator_inverse_(n_) {
    for (std::size_t g = 0; g < n_; ++g) {
        const Word& w = pres_.power(g);
        for (auto it = w.rbegin(); it != w.rend(); ++it)
            pow_letters_[g].push_back({static_cast<std::uint16_t>(it->gen), it->exp});
    }
    for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t g = 0; g < k; ++g) {
            const Word& w = pres_.conjugate(k, g);
            auto& letters = conj_letters_[k * n_ + g];
            conj_trivial_[k * n_ + g] = w.empty();
            for (auto it = w.rbegin(); it != w.rend(); ++it)
                letters.push_back({static_cast<std::uint16_t>(it->gen), it->exp});
            letters.push_back({static_cast<std::uint16_t>(k), 1});
        }
    for (std::size_t g = 0; g < n_; ++g) generator_inverse_[g] = inverse(generator(g));
}

std::vector<PcGroup::Letter>& PcGroup::scratch() {
    thread_local std::vector<Letter> stack;
    stack.clear();
    return stack;
}

void PcGroup::collect(Element& r, std::vector<Letter>& st) const {
    // Bit k of `live` is set iff r[k] != 0, so the tail test is a shift.
    std::uint64_t live = 0;
    for (std::size_t k = 0; k < n_; ++k)
        if (r[k] != 0) live |= std::uint64_t{1} << k;

    auto bump = [&](std::size_t g, std::uint32_t add) {
        std::uint32_t s = std::uint32_t{r[g]} + add;
        if (s >= p_) {
            s -= p_;
            st.insert(st.end(), pow_letters_[g].begin(), pow_letters_[g].end());
        }
        r[g] = static_cast<Exponent>(s);
        if (s != 0)
            live |= std::uint64_t{1} << g;
        else
            live &= ~(std::uint64_t{1} << g);
    };

    while (!st.empty()) {
        const Letter letter = st.back();
        st.pop_back();
        const std::size_t g = letter.gen;
        std::uint64_t tail = g + 1 < 64 ? live >> (g + 1) << (g + 1) : 0;

        if (tail == 0) {
            bump(g, letter.exp);
            continue;
        }

        // r = prefix * x_g^{r_g} * t  ==>  r * x_g = prefix * x_g^{r_g + 1} * t^{x_g}
        if (letter.exp > 1) st.push_back({letter.gen, static_cast<Exponent>(letter.exp - 1)});
        live &= ~tail;
        while (tail != 0) {
            const std::size_t k = 63 - static_cast<std::size_t>(__builtin_clzll(tail));
            tail &= ~(std::uint64_t{1} << k);
            const Exponent e = r[k];
            r[k] = 0;
            const std::size_t idx = k * n_ + g;
            if (conj_trivial_[idx]) {
                st.push_back({static_cast<std::uint16_t>(k), e});
            } else {
                const auto& word = conj_letters_[idx];
                for (Exponent rep = 0; rep < e; ++rep) st.insert(st.end(), word.begin(), word.end());
            }
        }
        bump(g, 1);
    }
}

Element PcGroup::generator(std::size_t i, Exponent e) const {
    if (i >= n_) throw DomainError("generator index out of range");
    Element x;
    x[i] = static_cast<Exponent>(e % p_);
    return x;
}

Element PcGroup::from_exponents(std::span<const Exponent> exps) const {
    if (exps.size() != n_) throw DimensionError("exponent vector length does not match ngens");
    Element x;
    for (std::size_t i = 0; i < n_; ++i) x[i] = static_cast<Exponent>(exps[i] % p_);
    return x;
}

Element PcGroup::word_element(const Word& w) const {
    Element r;
    auto& st = scratch();
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        st.push_back({static_cast<std::uint16_t>(it->gen), it->exp});
    collect(r, st);
    return r;
}

void PcGroup::multiply_generator(Element& acc, std::size_t i, Exponent e) const {
    if (e % p_ == 0) return;
    auto& st = scratch();
    st.push_back({static_cast<std::uint16_t>(i), static_cast<Exponent>(e % p_)});
    collect(acc, st);
}

Element PcGroup::multiply(const Element& a, const Element& b) const {
    Element r = a;
    auto& st = scratch();
    for (std::size_t g = n_; g-- > 0;)
        if (b[g] != 0) st.push_back({static_cast<std::uint16_t>(g), b[g]});
    collect(r, st);
    return r;
}

Element PcGroup::inverse(const Element& a) const {
    // Right-multiply a by the normal word b = x_1^{f_1} ... x_n^{f_n}, choosing
    // each f_g to clear position g; then a b = 1.
    Element r = a;
    Element b;
    for (std::size_t g = 0; g < n_; ++g) {
        if (r[g] == 0) continue;
        const auto f = static_cast<Exponent>(p_ - r[g]);
        b[g] = f;
        multiply_generator(r, g, f);
    }
    return b;
}

Element PcGroup::power(const Element& a, long long k) const {
    Element base = a;
    if (k < 0) {
        base = inverse(a);
        k = -k;
    }
    Element result;
    while (k > 0) {
        if (k & 1) result = multiply(result, base);
        k >>= 1;
        if (k) base = multiply(base, base);
    }
    return result;
}

Element PcGroup::conjugate(const Element& a, const Element& b) const {
    return multiply(inverse(b), multiply(a, b));
}

Element PcGroup::conjugate_by_generator(const Element& a, std::size_t i) const {
    Element r = a;
    multiply_generator(r, i, 1);
    return multiply(generator_inverse_[i], r);
}

Element PcGroup::commutator(const Element& a, const Element& b) const {
    return multiply(inverse(multiply(b, a)), multiply(a, b));
}

std::string PcGroup::format(const Element& e) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < n_; ++i) {
        if (e[i] == 0) continue;
        if (!first) os << '*';
        os << 'x' << i + 1;
        if (e[i] != 1) os << '^' << e[i];
        first = false;
    }
    return first ? "1" : os.str();
}

// ----------------------------------------------------------- consistency

ConsistencyReport check_consistency(const PcGroup& G) {
    const std::size_t n = G.ngens();
    const std::uint32_t p = G.prime();
    const auto& pres = G.presentation();
    auto fail = [](std::string test, std::size_t k, std::size_t j, std::size_t i, Element lhs,
                   Element rhs) {
        return ConsistencyReport{false, ConsistencyWitness{std::move(test), k, j, i, lhs, rhs}};
    };

    std::vector<Element> x(n), pw(n);
    for (std::size_t g = 0; g < n; ++g) {
        x[g] = G.generator(g);
        pw[g] = G.word_element(pres.power(g));
    }
    const auto top = static_cast<Exponent>(p - 1);

    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < j; ++i) {
                Element lhs = G.multiply(G.multiply(x[k], x[j]), x[i]);
                Element rhs = G.multiply(x[k], G.multiply(x[j], x[i]));
                if (lhs != rhs) return fail("kji", k, j, i, lhs, rhs);
            }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            Element lhs = G.multiply(pw[j], x[i]);
            Element rhs = G.multiply(G.generator(j, top), G.multiply(x[j], x[i]));
            if (lhs != rhs) return fail("jpow-i", j, j, i, lhs, rhs);
            lhs = G.multiply(x[j], pw[i]);
            rhs = G.multiply(G.multiply(x[j], x[i]), G.generator(i, top));
            if (lhs != rhs) return fail("j-ipow", j, j, i, lhs, rhs);
        }
    for (std::size_t i = 0; i < n; ++i) {
        Element lhs = G.multiply(pw[i], x[i]);
        Element rhs = G.multiply(x[i], pw[i]);
        if (lhs != rhs) return fail("ipow-i", i, i, i, lhs, rhs);
    }
    return {true, std::nullopt};
}

}  // namespace pgrp
