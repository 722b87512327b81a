#include "arl/errors.hpp"

namespace arl {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::too_many_leaves: return "too_many_leaves";
        case Errc::empty_leaves: return "empty_leaves";
        case Errc::block_full: return "block_full";
        case Errc::batch_full: return "batch_full";
        case Errc::empty_batch: return "empty_batch";
        case Errc::not_sealed: return "not_sealed";
        case Errc::shape_mismatch: return "shape_mismatch";
        case Errc::relation_unsatisfied: return "relation_unsatisfied";
        case Errc::bad_config: return "bad_config";
        case Errc::parse_error: return "parse_error";
        case Errc::entropy_failure: return "entropy_failure";
    }
    return "unknown";
}

}  // namespace arl
