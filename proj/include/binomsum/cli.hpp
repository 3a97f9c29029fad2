#pragma once

// Command-line front end. run() is the whole program minus process setup, so
// tests can drive it with in-memory streams.
//
// Exit codes: 0 success (classify: non-integral), 3 classify found the value
// integral, 2 usage error, 4 residue scan budget exceeded, 1 other failure.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "binomsum/integrality.hpp"
#include "binomsum/search.hpp"

namespace binomsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIntegral = 3;
inline constexpr int kExitBudget = 4;

struct ValuePayload {
  Rational value;
  friend bool operator==(const ValuePayload&, const ValuePayload&) = default;
};
struct VerdictPayload {
  Verdict verdict;
  friend bool operator==(const VerdictPayload&, const VerdictPayload&) = default;
};
struct RecordsPayload {
  std::vector<ExceptionRecord> records;
  friend bool operator==(const RecordsPayload&, const RecordsPayload&) = default;
};
struct ResiduesPayload {
  ResidueSet residues;
  friend bool operator==(const ResiduesPayload&, const ResiduesPayload&) = default;
};
struct LeastEllPayload {
  std::optional<std::uint64_t> ell;
  friend bool operator==(const LeastEllPayload&, const LeastEllPayload&) = default;
};
struct DensityPayload {
  Rational density;
  friend bool operator==(const DensityPayload&, const DensityPayload&) = default;
};
struct NListPayload {
  std::vector<std::uint32_t> n;
  friend bool operator==(const NListPayload&, const NListPayload&) = default;
};

using Payload = std::variant<ValuePayload, VerdictPayload, RecordsPayload, ResiduesPayload,
                             LeastEllPayload, DensityPayload, NListPayload>;

/// One machine-readable result: command name, its parameters, the payload and
/// the wall time spent computing it.
struct OutputRecord {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  Payload result;
  double elapsed_ms = 0.0;

  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

nlohmann::json to_json(const OutputRecord& record);
/// Throws nlohmann::json::exception or std::invalid_argument on malformed input.
OutputRecord record_from_json(const nlohmann::json& j);

nlohmann::json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const nlohmann::json& j);

/// "num/den", or just "num" for integers.
std::string format_rational(const Rational& q);
Rational parse_rational(const std::string& s);
Integer parse_integer(const std::string& s);

std::string records_csv(const std::vector<ExceptionRecord>& records);
std::string parity_pbm(const ParityTriangle& t);
std::string parity_text(const ParityTriangle& t);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace binomsum::cli
