#pragma once

#include <stdexcept>
#include <string>

namespace lclcx {

/// Failure classes surfaced by the library. The CLI maps any of these to
/// exit code 2.
enum class Errc {
  malformed_facet,
  mixed_value_tags,
  incomplete_table,
  empty_complex,
  syntax_error,
  semantic_error,
  unsupported_degree,
  radius_mismatch,
  no_ids,
  too_large,
  missing_view,
  infeasible_promise,
  verification_failed,
  id_range,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

const char* errc_name(Errc code);

}  // namespace lclcx
