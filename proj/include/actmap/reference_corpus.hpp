#pragma once

#include "actmap/corpus.hpp"

namespace actmap::refcorpus {

// Deterministic demonstration corpus: 14271 turns (9083 system, 5188 user)
// whose per-label histogram equals the published label distribution of the
// annotated LEGO release. Every turn carries one of the documented template
// texts, so the bundled rules map it without guesswork; guarded labels are
// split across fixed-size blocks (promise vs plain pausing announcements,
// question vs statement bus requests, and so on).
//
// Layout, relied on by the bundled demonstration override file:
//   - one dialog per label block, id "sys-<label-slug>[-<variant>]" or
//     "usr-<label-slug>[-<variant>]", turn_index 0..n-1;
//   - "ctx-request-next-bus" / "ctx-request-previous-bus" interleave an
//     Ask Time system turn before each user turn that answers it.
Corpus build();

} // namespace actmap::refcorpus
