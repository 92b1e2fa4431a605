#ifndef CLAYER_CHECKPOINT_HPP
#define CLAYER_CHECKPOINT_HPP

#include <string>

#include "clayer/grid.hpp"
#include "clayer/params.hpp"
#include "clayer/state.hpp"

namespace clayer {

// ============================================================================
// Binary state snapshots. Fixed little header followed by the four spectral
// fields in coefficient order (mode-major, then wall-to-wall in y), each
// entry a real/imaginary pair of doubles in native endianness.
// ============================================================================

/// A snapshot read back from disk.
struct CheckpointData {
  Grid grid;
  Params params;
  State state;

  CheckpointData(const Grid& g, const Params& p)
      : grid(g), params(p), state(g) {}
};

/// Write the state and its context to path. Throws std::runtime_error on
/// I/O failure.
void write_checkpoint(const std::string& path, const Grid& g,
                      const Params& prm, const State& st);

/// Read a snapshot. Throws std::runtime_error on a missing file, a bad
/// magic, inconsistent sizes, or invalid stored parameters.
CheckpointData read_checkpoint(const std::string& path);

}  // namespace clayer

#endif
