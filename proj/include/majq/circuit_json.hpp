#pragma once

#include <string>
#include <string_view>

#include "majq/core.hpp"

namespace majq {

/// Malformed circuit document; the message starts with the offending field,
/// e.g. "gates[2].weights[0]: ...".
class parse_error : public error {
public:
  using error::error;
};

/// {"n": N, "k": K, "gates": [{"inputs": [...], "weights": [...], "threshold": t}, ...],
///  "output": {"inputs": [...], "weights": [...], "threshold": t}}
std::string circuit_to_json(const depth_two_circuit& c);

depth_two_circuit circuit_from_json(std::string_view text);

} // namespace majq
