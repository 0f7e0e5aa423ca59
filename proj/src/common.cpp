#include "gcm/common.hpp"

namespace gcm {

void Report::merge(const Report& other, const std::string& prefix) {
    for (const auto& v : other.violations) violations.push_back(prefix + v);
}

std::string Report::str() const {
    if (ok()) return "valid";
    return join(violations, "\n");
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace gcm
