#pragma once

#include <fstream>
#include <stdexcept>
#include <iterator>
#include <string>

#include "curvelike/dvg.hpp"

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(CURVELIKE_FIXTURES) + "/" + name + ".dvg"; }

inline curvelike::DvgDocument load(const std::string& name) {
    std::ifstream in(path(name));
    if (!in) throw std::runtime_error("missing fixture " + name);
    return curvelike::parse_dvg({std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()});
}

inline curvelike::Divisor divisor(const std::string& name, const std::string& divisor_name = {}) {
    return load(name).divisor(divisor_name);
}

inline std::size_t index(const curvelike::Divisor& d, const std::string& label) {
    return d.config().require_index(label);
}

}  // namespace fixtures
