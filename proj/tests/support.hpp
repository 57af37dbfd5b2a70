#pragma once

#include <random>
#include <string>

#include "pgrp/pcgroup.hpp"

#ifndef PGRP_DATA_DIR
#error "PGRP_DATA_DIR must name the fixture directory"
#endif

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(PGRP_DATA_DIR) + "/" + name; }

inline pgrp::Element random_element(const pgrp::PcGroup& G, std::mt19937_64& rng) {
    pgrp::Element e;
    std::uniform_int_distribution<unsigned> d(0, G.prime() - 1);
    for (std::size_t i = 0; i < G.ngens(); ++i) e[i] = static_cast<pgrp::Exponent>(d(rng));
    return e;
}

}  // namespace testing
