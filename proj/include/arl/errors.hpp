#pragma once

#include <stdexcept>
#include <string>

namespace arl {

enum class Errc {
    too_many_leaves,
    empty_leaves,
    block_full,
    batch_full,
    empty_batch,
    not_sealed,
    shape_mismatch,
    relation_unsatisfied,
    bad_config,
    parse_error,
    entropy_failure,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

}  // namespace arl
