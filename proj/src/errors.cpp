#include "hle/errors.hpp"

namespace hle {

void rethrow_with_prefix(const Error& e, const std::string& prefix) {
  const std::string message = prefix + e.what();
#define HLE_RETHROW(Name) \
  if (e.kind() == #Name) throw Name(message);
  HLE_ERROR_KINDS(HLE_RETHROW)
#undef HLE_RETHROW
  throw Error(e.kind(), message);
}

}  // namespace hle
