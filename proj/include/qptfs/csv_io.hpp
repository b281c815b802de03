#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qptfs/config.hpp"
#include "qptfs/process_tensor.hpp"
#include "qptfs/response.hpp"

namespace qptfs {

class ParseError : public IoError {
public:
    ParseError(const std::filesystem::path& file, std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

// T_fs,omega,re,im with omega a carrier tuple such as "+-+-".
void write_signal_csv(const std::filesystem::path& path, const SignalTable& table);
SignalTable read_signal_csv(const std::filesystem::path& path);

// T_fs,p,q,r,s,re,im
void write_pathway_csv(const std::filesystem::path& path, const std::vector<PathwaySignalSet>& sets);

// T_fs,n,m,nu,mu,re,im over the sixteen single-exciton elements followed by
// the ground row (n = m = g).
void write_chi_csv(const std::filesystem::path& path, const std::vector<ProcessTensor>& chis);
std::vector<ProcessTensor> read_chi_csv(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace qptfs
