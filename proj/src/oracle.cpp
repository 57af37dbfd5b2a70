#include "pgrp/oracle.hpp"

#include <algorithm>

#include "pgrp/error.hpp"

namespace pgrp::oracle {

std::vector<Element> all_elements(const PcGroup& G, std::size_t limit) {
    return Subgroup::whole(G).elements(limit);
}

ElementSet closure(const PcGroup& G, const std::vector<Element>& gens, std::size_t limit) {
    ElementSet out{G.identity()};
    std::vector<Element> queue{G.identity()};
    while (!queue.empty()) {
        const Element x = queue.back();
        queue.pop_back();
        for (const auto& s : gens) {
            Element y = G.multiply(x, s);
            if (out.insert(y).second) {
                if (out.size() > limit) throw ResourceError("closure exceeds the element limit");
                queue.push_back(y);
            }
        }
    }
    return out;
}

Subgroup to_subgroup(const PcGroup& G, const ElementSet& set) {
    std::vector<Element> v(set.begin(), set.end());
    std::sort(v.begin(), v.end());
    return Subgroup::generated(G, v);
}

ElementSet centralizer(const PcGroup& G, const ElementSet& H, const Element& a) {
    ElementSet out;
    for (const auto& x : H)
        if (G.multiply(a, x) == G.multiply(x, a)) out.insert(x);
    return out;
}

ElementSet center(const PcGroup& G, const ElementSet& H) {
    ElementSet out;
    for (const auto& z : H) {
        bool central = true;
        for (const auto& x : H)
            if (G.multiply(z, x) != G.multiply(x, z)) {
                central = false;
                break;
            }
        if (central) out.insert(z);
    }
    return out;
}

ElementSet center(const PcGroup& G, std::size_t limit) {
    const auto elems = all_elements(G, limit);
    return center(G, ElementSet(elems.begin(), elems.end()));
}

ElementSet commutator(const PcGroup& G, const ElementSet& X, const ElementSet& Y, std::size_t limit) {
    ElementSet comms;
    for (const auto& x : X)
        for (const auto& y : Y) comms.insert(G.commutator(x, y));
    std::vector<Element> gens(comms.begin(), comms.end());
    std::sort(gens.begin(), gens.end());
    return closure(G, gens, limit);
}

std::vector<std::size_t> lower_central_orders(const PcGroup& G, std::size_t limit) {
    const auto elems = all_elements(G, limit);
    const ElementSet whole(elems.begin(), elems.end());
    std::vector<std::size_t> orders{whole.size()};
    ElementSet term = whole;
    while (term.size() > 1) {
        ElementSet next = commutator(G, term, whole, limit);
        if (next.size() == term.size()) break;  // not nilpotent; cannot happen for p-groups
        orders.push_back(next.size());
        term = std::move(next);
    }
    return orders;
}

std::optional<bool> is_camina(const PcGroup& G, std::size_t limit) {
    const auto elems = all_elements(G, limit);
    const ElementSet whole(elems.begin(), elems.end());
    const ElementSet derived = commutator(G, whole, whole, limit);
    if (derived.size() == 1 || derived.size() == whole.size()) return std::nullopt;
    for (const auto& g : elems) {
        if (derived.contains(g)) continue;
        ElementSet cls;
        for (const auto& x : elems) cls.insert(G.conjugate(g, x));
        if (cls.size() != derived.size()) return false;
        // The class always lies in gG'; equal size means equality.
    }
    return true;
}

bool is_vz(const PcGroup& G, const ElementSet& H) {
    const ElementSet Z = center(G, H);
    const ElementSet derived = commutator(G, H, H);
    for (const auto& a : H) {
        if (Z.contains(a)) continue;
        ElementSet cls;
        for (const auto& x : H) cls.insert(G.conjugate(a, x));
        if (cls.size() != derived.size()) return false;
    }
    return true;
}

CentralizerFamily centralizer_family(const PcGroup& G, std::size_t limit) {
    const auto elems = all_elements(G, limit);
    const ElementSet whole(elems.begin(), elems.end());
    const ElementSet derived = commutator(G, whole, whole, limit);
    std::vector<Subgroup> members;
    for (const auto& a : elems) {
        if (derived.contains(a)) continue;
        members.push_back(to_subgroup(G, centralizer(G, whole, a)));
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    CentralizerFamily out;
    for (const auto& C : members) {
        const auto els = C.elements(limit);
        const ElementSet set(els.begin(), els.end());
        if (center(G, set).size() == set.size()) ++out.abelian;
    }
    out.members = std::move(members);
    return out;
}

}  // namespace pgrp::oracle
