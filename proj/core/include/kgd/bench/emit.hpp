#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kgd/bench/profile.hpp"
#include "kgd/bench/run.hpp"
#include "kgd/trace.hpp"

namespace kgd::bench {

enum class EmitFormat { Csv, JsonLines };

EmitFormat format_from_string(const std::string& name);  // "csv" | "jsonl"

/// Records schema: solver,problem,outcome,iters,gevals,seconds,rel_gnorm.
void write_records_csv(const std::vector<BenchmarkRecord>& records, std::ostream& out);
void write_records_jsonl(const std::vector<BenchmarkRecord>& records, std::ostream& out);

/// Readers reject a missing/renamed column by name, with line diagnostics.
std::vector<BenchmarkRecord> read_records_csv(std::istream& in);
std::vector<BenchmarkRecord> read_records_jsonl(std::istream& in);
std::vector<BenchmarkRecord> read_records_file(const std::string& path);

/// Profile schema: solver,tau,r; rows sorted by (solver, tau).
void write_profile_csv(const PerformanceProfile& profile, std::ostream& out);
void write_profile_jsonl(const PerformanceProfile& profile, std::ostream& out);

/// gnuplot script drawing one step curve per solver from the profile CSV.
void write_gnuplot_script(const PerformanceProfile& profile, const std::string& csv_path,
                          std::ostream& out);

/// Per-iterate trace table: k,f,rel_gnorm,alpha,shrinks.
void write_trace_csv(const Trace& trace, std::ostream& out);

}  // namespace kgd::bench
