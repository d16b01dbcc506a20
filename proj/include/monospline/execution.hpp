#pragma once

namespace monospline {

// Selects between the OpenMP kernel and its serial reference. Both paths
// produce bit-identical results; the serial one is kept for testing and
// benchmarking.
enum class Execution { kSerial, kParallel };

}  // namespace monospline
