#ifndef ZETAPAIR_ZERO_STORE_HPP
#define ZETAPAIR_ZERO_STORE_HPP

#include "zetapair/zero_set.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace zetapair {

// Plain-text format: one decimal ordinate per line, ascending, '#' comments.
// Throws ParseError / MonotonicityError with 1-based line numbers.
ZeroSet ingest_table(std::istream& in, Source source = Source::ingested,
                     Scaling scaling = Scaling::raw, double tol = 1e-8);
ZeroSet ingest_table_file(const std::filesystem::path& path,
                          Source source = Source::ingested,
                          Scaling scaling = Scaling::raw, double tol = 1e-8);

// Fixed 9-decimal output; round-trips bit-exactly through ingest_table.
void write_table(const ZeroSet& zs, std::ostream& out);
void write_table_file(const ZeroSet& zs, const std::filesystem::path& path);

// Binary cache: 16-byte header (8-byte magic "ZPZCACHE", uint32 version,
// uint32 count, both little-endian) followed by count little-endian IEEE-754
// doubles.  Carries ordinates only; provenance is supplied on load.
void save_cache(const ZeroSet& zs, const std::filesystem::path& path);
ZeroSet load_cache(const std::filesystem::path& path,
                   Source source = Source::computed,
                   Scaling scaling = Scaling::raw,
                   double tol = 1e-8, bool verified = false);

// Cache directory: ZETAPAIR_CACHE_DIR environment variable, overridable by
// the CLI flag; empty when unset.
std::filesystem::path cache_directory();

struct VerifyMismatch {
    std::size_t index;        // index in the ingested set
    double ingested;          // ingested ordinate (NaN for a missing one)
    double computed;          // nearest computed ordinate (NaN if none)
    double delta;
};

struct VerifyReport {
    std::size_t n_ingested = 0;
    std::size_t n_computed = 0;
    std::vector<VerifyMismatch> mismatches;
    bool ok() const { return mismatches.empty() && n_ingested == n_computed; }
};

// Recompute zeros up to zs.t_max with the engine and compare: every ingested
// ordinate must be within tol of a computed one and the counts must match.
// Marks the set verified through the returned report consumer (CLI).
VerifyReport verify_against_engine(const ZeroSet& zs, double tol);

} // namespace zetapair

#endif
