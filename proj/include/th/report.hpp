#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "th/uncertainty.hpp"

namespace th {

// Configuration shared by the CLI subcommands and the self-test harness.
struct RunConfig {
    std::vector<int> qs{3};
    double tolerance = 1e-8;
    std::uint64_t seed = 1;
    std::string format = "csv";  // csv | json
    std::string out_path;        // empty writes to stdout
    int verbosity = 0;

    // ConfigError on a non-prime or even q, a q beyond the field cap, a
    // tolerance outside [1e-12, 1e-4], or an unknown format.
    void validate() const;
};

// Fixed-point text form used by every emitter: %.12g with negative zero
// flushed, so identical configurations produce byte-identical files.
std::string format_real(double x);
std::string format_complex(cplx z);  // "re:im", both through format_real

struct OutputTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const OutputTable& table);
std::string to_json(const OutputTable& table);

// Renders per config.format and writes to config.out_path or stdout.
// Errors carry the path in the message.
void write_output(const RunConfig& config, const OutputTable& table);

OutputTable field_info_table(const FieldCtx& field);
OutputTable chartable_table(const CharacterTable& table);
OutputTable doublecosets_table(const Gl2Ctx& group, const DoubleCosetTable& cosets);
OutputTable decompose_table(const CharacterTable& table, CharLabel Phi);

// Per coset: the averaging value of the spherical function attached to the
// cuspidal orbit of Lambda, the pair-set value at a diagonal parameter when
// one is defined there, and their difference.
OutputTable spherical_table(const CharacterTable& table, const DoubleCosetTable& cosets,
                            CharLabel Phi, CharLabel Lambda);

// Named basis rows from the exhaustive scan when exhaustive is set,
// followed by seeded random draws.
OutputTable uncertainty_table(const CharacterTable& table, const DoubleCosetTable& cosets,
                              CharLabel Phi, int samples, std::uint64_t seed, bool exhaustive);

struct FindingsEntry {
    std::string claim;     // stable identifier, e.g. "multtable.cuspidal"
    std::string status;    // verified | refuted | partial
    std::string evidence;  // numeric summary, deterministic for a fixed config
};

struct FindingsReport {
    std::vector<FindingsEntry> entries;

    void add(std::string claim, std::string status, std::string evidence);
    std::string to_markdown() const;
};

}  // namespace th
