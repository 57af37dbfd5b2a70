#include "pgrp/subgroup.hpp"

#include <algorithm>

#include "pgrp/error.hpp"
#include "pgrp/gfp.hpp"

namespace pgrp {

Subgroup::Subgroup(const PcGroup& G) : G_(&G), slot_(G.ngens(), -1) {}

Subgroup Subgroup::trivial(const PcGroup& G) { return Subgroup(G); }

Subgroup Subgroup::whole(const PcGroup& G) {
    Subgroup H(G);
    for (std::size_t i = 0; i < G.ngens(); ++i) {
        H.slot_[i] = static_cast<int>(i);
        H.leads_.push_back(i);
        H.igs_.push_back(G.generator(i));
    }
    return H;
}

Subgroup Subgroup::generated(const PcGroup& G, std::span<const Element> gens) {
    Subgroup H(G);
    H.close({gens.begin(), gens.end()});
    return H;
}

Subgroup Subgroup::normal_closure(const PcGroup& G, std::span<const Element> gens) {
    Subgroup H = generated(G, gens);
    for (;;) {
        std::vector<Element> extra;
        for (const Element& u : H.igs_)
            for (std::size_t i = 0; i < G.ngens(); ++i) {
                Element c = G.conjugate_by_generator(u, i);
                if (!H.contains(c)) extra.push_back(c);
            }
        if (extra.empty()) return H;
        H = H.join(extra);
    }
}

Element Subgroup::power_of(std::size_t slot, Exponent e) const {
    return G_->power(igs_[slot], e);
}

void Subgroup::close(std::vector<Element> pending) {
    const PcGroup& G = *G_;
    const std::uint32_t p = G.prime();
    const std::size_t n = G.ngens();

    // Working table keyed by leading index; igs_ is rebuilt at the end.
    std::vector<std::optional<Element>> table(n);
    for (std::size_t s = 0; s < igs_.size(); ++s) table[leads_[s]] = igs_[s];

    // Cached inverse powers u^{-c}, c = 1..p-1, built on demand for small p.
    const bool cache = p <= 31;
    std::vector<std::vector<Element>> inv_pow(n);
    auto inverse_power = [&](std::size_t l, Exponent c) -> Element {
        if (!cache) return G.power(*table[l], -static_cast<long long>(c));
        auto& v = inv_pow[l];
        if (v.empty()) {
            v.resize(p);
            const Element inv = G.inverse(*table[l]);
            v[1] = inv;
            for (std::uint32_t k = 2; k < p; ++k) v[k] = G.multiply(v[k - 1], inv);
        }
        return v[c];
    };

    while (!pending.empty()) {
        Element h = std::move(pending.back());
        pending.pop_back();
        for (;;) {
            const std::size_t l = h.leading_index();
            if (l >= n) break;
            if (table[l]) {
                h = G.multiply(inverse_power(l, h[l]), h);
                continue;
            }
            const Exponent scale = gfp::inv(h[l], p);
            Element u = scale == 1 ? h : G.power(h, scale);
            pending.push_back(G.power(u, p));
            for (std::size_t m = 0; m < n; ++m)
                if (table[m]) pending.push_back(G.commutator(u, *table[m]));
            table[l] = std::move(u);
            break;
        }
    }

    igs_.clear();
    leads_.clear();
    std::fill(slot_.begin(), slot_.end(), -1);
    for (std::size_t l = 0; l < n; ++l)
        if (table[l]) {
            slot_[l] = static_cast<int>(igs_.size());
            leads_.push_back(l);
            igs_.push_back(*table[l]);
        }
    canonicalize();
}

void Subgroup::canonicalize() {
    const PcGroup& G = *G_;
    for (std::size_t s = igs_.size(); s-- > 0;) {
        Element& u = igs_[s];
        for (std::size_t t = s + 1; t < igs_.size(); ++t) {
            const Exponent c = u[leads_[t]];
            if (c != 0) u = G.multiply(u, G.power(igs_[t], -static_cast<long long>(c)));
        }
    }
}

bool Subgroup::contains(const Element& h) const { return reduce(h).is_identity(); }

bool Subgroup::contains(const Subgroup& K) const {
    return std::all_of(K.igs_.begin(), K.igs_.end(), [&](const Element& u) { return contains(u); });
}

Element Subgroup::reduce(const Element& h) const {
    Element r = h;
    for (std::size_t s = 0; s < igs_.size(); ++s) {
        const Exponent c = r[leads_[s]];
        if (c != 0) r = G_->multiply(r, G_->power(igs_[s], -static_cast<long long>(c)));
    }
    return r;
}

std::optional<std::vector<Exponent>> Subgroup::coordinates(const Element& h) const {
    std::vector<Exponent> coeffs(igs_.size(), 0);
    Element r = h;
    for (std::size_t s = 0; s < igs_.size(); ++s) {
        const std::size_t l = leads_[s];
        for (std::size_t k = 0; k < l; ++k)
            if (r[k] != 0) return std::nullopt;
        const Exponent c = r[l];
        coeffs[s] = c;
        if (c != 0) r = G_->multiply(G_->power(igs_[s], -static_cast<long long>(c)), r);
    }
    if (!r.is_identity()) return std::nullopt;
    return coeffs;
}

Element Subgroup::combine(std::span<const Exponent> coeffs) const {
    if (coeffs.size() != igs_.size()) throw DimensionError("coefficient count does not match IGS length");
    Element r;
    for (std::size_t s = 0; s < igs_.size(); ++s)
        if (coeffs[s] % G_->prime() != 0) r = G_->multiply(r, G_->power(igs_[s], coeffs[s]));
    return r;
}

std::vector<Element> Subgroup::elements(std::size_t limit) const {
    const std::uint32_t p = G_->prime();
    const std::size_t total = gfp::checked_power(p, igs_.size(), limit);
    std::vector<Element> out;
    out.reserve(total);
    std::vector<Exponent> c(igs_.size(), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        out.push_back(combine(c));
        for (std::size_t s = c.size(); s-- > 0;) {
            if (++c[s] < p) break;
            c[s] = 0;
        }
    }
    return out;
}

Subgroup Subgroup::join(const Subgroup& other) const { return join(other.igs_); }

Subgroup Subgroup::join(std::span<const Element> extra) const {
    Subgroup H = *this;
    H.close({extra.begin(), extra.end()});
    return H;
}

bool Subgroup::is_normal() const {
    for (const Element& u : igs_)
        for (std::size_t i = 0; i < G_->ngens(); ++i)
            if (!contains(G_->conjugate_by_generator(u, i))) return false;
    return true;
}

// ------------------------------------------------------ CentralQuotient

namespace {

std::vector<std::size_t> complement_of(const Subgroup& N) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < N.group().ngens(); ++i)
        if (!N.has_lead(i)) kept.push_back(i);
    return kept;
}

}  // namespace

CentralQuotient::CentralQuotient(const PcGroup& G, const Subgroup& N)
    : G_(&G), N_(N), kept_(complement_of(N)), pres_(G.prime(), kept_.size()) {
    for (const Element& u : N.igs())
        for (std::size_t i = 0; i < G.ngens(); ++i)
            if (!G.commutator(u, G.generator(i)).is_identity())
                throw NotCentralError("subgroup element " + G.format(u) + " does not commute with x" +
                                      std::to_string(i + 1));

    auto to_word = [&](const Element& g) {
        const Element q = project(g);
        Word w;
        for (std::size_t k = 0; k < kept_.size(); ++k)
            if (q[k] != 0) w.push_back({k, q[k]});
        return w;
    };
    for (std::size_t a = 0; a < kept_.size(); ++a) {
        const Element x = G.generator(kept_[a]);
        pres_.set_power(a, to_word(G.power(x, G.prime())));
        for (std::size_t b = 0; b < a; ++b) {
            const Element y = G.generator(kept_[b]);
            pres_.set_conjugate(a, b, to_word(G.commutator(x, y)));
        }
    }
}

Element CentralQuotient::project(const Element& g) const {
    const Element r = N_.reduce(g);
    Element q;
    for (std::size_t k = 0; k < kept_.size(); ++k) q[k] = r[kept_[k]];
    return q;
}

Element CentralQuotient::lift(const Element& q) const {
    Element g;
    for (std::size_t k = 0; k < kept_.size(); ++k) g[kept_[k]] = q[k];
    return g;
}

}  // namespace pgrp
