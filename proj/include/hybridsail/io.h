// CSV and report emission. All files are UTF-8 with LF line endings and a
// header row; numbers use the shortest round-trip representation so reruns
// with the same seed produce byte-identical files.

#ifndef HYBRIDSAIL_IO_H_
#define HYBRIDSAIL_IO_H_

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "hybridsail/config.h"
#include "hybridsail/experiment.h"

namespace hybridsail {

void WriteTrajectoryCsv(std::ostream& out, const CruiseResult& run);
void WriteEnergyCsv(std::ostream& out, const EnergyLedger& ledger);
void WriteEventsCsv(std::ostream& out, const CruiseResult& run);
void WriteCruiseSummary(std::ostream& out, const CruiseResult& run,
                        const RunConfig& cfg);
void WriteSweepCsv(std::ostream& out, const SweepReport& report);
void WriteSweepReport(std::ostream& out, const SweepReport& report,
                      const SweepSpec& spec);

struct EnergySeries {
  std::vector<double> t;
  std::vector<double> cumulative;
};

// Reads the t and cumulative_j columns of an energy CSV. Throws
// std::runtime_error naming the line on malformed input.
EnergySeries ReadEnergyCsv(std::istream& in);
EnergySeries LoadEnergyCsv(const std::filesystem::path& path);

// Writes `fn(stream)` to `path`, throwing std::runtime_error on failure.
template <typename Fn>
void WriteFile(const std::filesystem::path& path, Fn&& fn);

}  // namespace hybridsail

#include <fstream>
#include <stdexcept>

namespace hybridsail {

template <typename Fn>
void WriteFile(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  fn(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace hybridsail

#endif  // HYBRIDSAIL_IO_H_
