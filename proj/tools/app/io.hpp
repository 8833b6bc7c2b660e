#pragma once

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "superburst/bursts.hpp"
#include "superburst/spectrum.hpp"
#include "superburst/trace.hpp"

namespace superburst::cli {

namespace fs = std::filesystem;

/// Comma-separated, LF-terminated, numbers as %.17g so doubles survive a round trip.
class CsvWriter {
  public:
    CsvWriter(const fs::path& path, const std::vector<std::string>& header);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    CsvWriter& num(double v);
    CsvWriter& integer(long long v);
    CsvWriter& text(const std::string& v);
    void end_row();

  private:
    void sep();
    std::FILE* f_;
    std::string path_;
    bool first_ = true;
};

/// Columns of a trace.csv file as read back from disk.
struct TraceTable {
    std::vector<double> time;
    std::vector<double> power;
    std::vector<double> re_amp;
    std::vector<double> im_amp;
};

void write_trace_csv(const fs::path& path, const EmissionTrace& trace);
[[nodiscard]] TraceTable read_trace_csv(const fs::path& path);
/// Uniform-grid trace rebuilt from a table; throws DomainError if the time column is not uniform.
[[nodiscard]] EmissionTrace to_trace(const TraceTable& table);

void write_bursts_csv(const fs::path& path, const BurstTrain& train);
void write_spectrum_csv(const fs::path& path, const Spectrum& spectrum);

/// Pretty-printed with a trailing newline; written to a temporary and renamed into place.
void write_json(const fs::path& path, const nlohmann::json& doc);

}  // namespace superburst::cli
