#pragma once

#include "ftboost/waveform.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace ftboost {

/// Header row: t, i_l_<k> for each phase, v_c, then per phase k:
/// gate_main_k, gate_reserve_k, i_main_k, i_reserve_k, i_out_diode_k,
/// fuse_main_acc_k, fuse_main_blown_k, fuse_reserve_acc_k,
/// fuse_reserve_blown_k, duty_k, mode_k.
[[nodiscard]] std::string waveform_header(std::size_t phase_count);

/// CSV with '.' decimals, '\n' line ends and shortest round-trip number
/// formatting (locale independent). Booleans are 0/1; mode is the ModeKind code.
void write_waveforms(const WaveformLog& log, std::ostream& out);

/// Throws std::runtime_error naming the path on I/O failure.
void write_waveforms(const WaveformLog& log, const std::filesystem::path& path);

}  // namespace ftboost
