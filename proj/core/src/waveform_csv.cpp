#include "ftboost/waveform_csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace ftboost {

namespace {

void put_number(std::ostream& out, double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.write(buf.data(), res.ptr - buf.data());
}

void put_flag(std::ostream& out, bool v) { out.put(v ? '1' : '0'); }

}  // namespace

std::string waveform_header(std::size_t phase_count) {
    std::string h = "t";
    for (std::size_t k = 0; k < phase_count; ++k) h += ",i_l_" + std::to_string(k);
    h += ",v_c";
    static constexpr const char* kPerPhase[] = {
        "gate_main",        "gate_reserve",     "i_main",  "i_reserve", "i_out_diode", "fuse_main_acc",
        "fuse_main_blown",  "fuse_reserve_acc", "fuse_reserve_blown", "duty", "mode"};
    for (std::size_t k = 0; k < phase_count; ++k)
        for (const char* name : kPerPhase) h += "," + std::string(name) + "_" + std::to_string(k);
    return h;
}

void write_waveforms(const WaveformLog& log, std::ostream& out) {
    out << waveform_header(log.phase_count) << '\n';
    for (const StepSample& s : log.samples) {
        put_number(out, s.t);
        for (const PhaseSample& p : s.phases) {
            out.put(',');
            put_number(out, p.i_l);
        }
        out.put(',');
        put_number(out, s.v_c);
        for (const PhaseSample& p : s.phases) {
            out.put(',');
            put_flag(out, p.gate_main);
            out.put(',');
            put_flag(out, p.gate_reserve);
            out.put(',');
            put_number(out, p.i_main);
            out.put(',');
            put_number(out, p.i_reserve);
            out.put(',');
            put_number(out, p.i_out_diode);
            out.put(',');
            put_number(out, p.fuse_main_acc);
            out.put(',');
            put_flag(out, p.fuse_main_blown);
            out.put(',');
            put_number(out, p.fuse_reserve_acc);
            out.put(',');
            put_flag(out, p.fuse_reserve_blown);
            out.put(',');
            put_number(out, p.duty);
            out.put(',');
            out.put(static_cast<char>('0' + static_cast<int>(p.mode)));
        }
        out.put('\n');
    }
}

void write_waveforms(const WaveformLog& log, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    write_waveforms(log, out);
    out.flush();
    if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace ftboost
