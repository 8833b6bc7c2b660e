#include "io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "superburst/errors.hpp"

namespace superburst::cli {

CsvWriter::CsvWriter(const fs::path& path, const std::vector<std::string>& header)
    : f_(std::fopen(path.c_str(), "wb")), path_(path.string()) {
    if (!f_) throw std::runtime_error("cannot write '" + path_ + "'");
    for (const auto& h : header) text(h);
    end_row();
}

CsvWriter::~CsvWriter() {
    if (f_) std::fclose(f_);
}

void CsvWriter::sep() {
    if (!first_) std::fputc(',', f_);
    first_ = false;
}

CsvWriter& CsvWriter::num(double v) {
    sep();
    std::fprintf(f_, "%.17g", v);
    return *this;
}

CsvWriter& CsvWriter::integer(long long v) {
    sep();
    std::fprintf(f_, "%lld", v);
    return *this;
}

CsvWriter& CsvWriter::text(const std::string& v) {
    sep();
    std::fputs(v.c_str(), f_);
    return *this;
}

void CsvWriter::end_row() {
    std::fputc('\n', f_);
    if (std::ferror(f_)) throw std::runtime_error("write failed on '" + path_ + "'");
    first_ = true;
}

void write_trace_csv(const fs::path& path, const EmissionTrace& trace) {
    const bool amp = !trace.amplitude.empty();
    std::vector<std::string> header{"t_s", "power_photons_per_s"};
    if (amp) {
        header.emplace_back("re_amp_sqrt_photons");
        header.emplace_back("im_amp_sqrt_photons");
    }
    CsvWriter w(path, header);
    for (std::size_t k = 0; k < trace.size(); ++k) {
        w.num(trace.time(k)).num(trace.power[k]);
        if (amp) w.num(trace.amplitude[k].real()).num(trace.amplitude[k].imag());
        w.end_row();
    }
}

TraceTable read_trace_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open trace '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw DomainError("empty trace file '" + path.string() + "'");
    std::size_t columns = 1;
    for (char c : line) columns += c == ',';
    if (line.rfind("t_s,power_photons_per_s", 0) != 0 || (columns != 2 && columns != 4)) {
        throw DomainError("'" + path.string() + "' is not a trace.csv file");
    }
    TraceTable t;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        double v[4] = {};
        const char* p = line.c_str();
        for (std::size_t c = 0; c < columns; ++c) {
            char* end = nullptr;
            v[c] = std::strtod(p, &end);
            if (end == p || (c + 1 < columns && *end != ',') || (c + 1 == columns && *end != '\0')) {
                throw DomainError("malformed row " + std::to_string(row) + " in '" + path.string() + "'");
            }
            p = end + 1;
        }
        t.time.push_back(v[0]);
        t.power.push_back(v[1]);
        if (columns == 4) {
            t.re_amp.push_back(v[2]);
            t.im_amp.push_back(v[3]);
        }
    }
    return t;
}

EmissionTrace to_trace(const TraceTable& table) {
    const std::size_t n = table.time.size();
    if (n < 2) throw DomainError("a trace needs at least two samples");
    EmissionTrace tr;
    tr.t0 = table.time.front();
    tr.dt = (table.time.back() - table.time.front()) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(table.time[k] - tr.time(k)) > 1e-6 * tr.dt) throw DomainError("trace time column is not uniform");
    }
    tr.power = table.power;
    for (std::size_t k = 0; k < table.re_amp.size(); ++k) tr.amplitude.emplace_back(table.re_amp[k], table.im_amp[k]);
    tr.validate();
    return tr;
}

void write_bursts_csv(const fs::path& path, const BurstTrain& train) {
    CsvWriter w(path, {"index", "onset_s", "peak_time_s", "peak_power_photons_per_s", "settled"});
    for (std::size_t k = 0; k < train.size(); ++k) {
        w.integer(static_cast<long long>(k)).num(train.onsets[k]).num(train.peak_times[k]).num(train.peaks[k]);
        w.integer(train.settled[k] ? 1 : 0).end_row();
    }
}

void write_spectrum_csv(const fs::path& path, const Spectrum& spectrum) {
    CsvWriter w(path, {"frequency_hz", "density_power2_per_hz"});
    for (std::size_t k = 0; k < spectrum.frequency.size(); ++k) w.num(spectrum.frequency[k]).num(spectrum.density[k]).end_row();
}

void write_json(const fs::path& path, const nlohmann::json& doc) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
        out << doc.dump(2) << '\n';
        if (!out) throw std::runtime_error("write failed on '" + path.string() + "'");
    }
    fs::rename(tmp, path);
}

}  // namespace superburst::cli
