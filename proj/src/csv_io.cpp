#include "qptfs/csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace qptfs {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void close_out(std::ofstream& out, const std::filesystem::path& path) {
    out.close();
    if (!out) throw IoError("error while writing " + path.string());
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_number(const std::string& s, const std::filesystem::path& file, std::size_t line) {
    double v = 0.0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ParseError(file, line, "not a number: \"" + s + "\"");
    return v;
}

struct CsvReader {
    std::filesystem::path path;
    std::ifstream in;
    std::size_t line_no = 0;

    CsvReader(const std::filesystem::path& p, const std::string& header) : path(p), in(p) {
        if (!in) throw IoError("cannot open " + p.string());
        std::string line;
        if (!next(line)) throw ParseError(path, 1, "empty file");
        if (line != header) throw ParseError(path, line_no, "expected header \"" + header + "\"");
    }

    bool next(std::string& line) {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(path, line_no, what); }
};

Level parse_level(const std::string& s, const CsvReader& r) {
    if (s == "g") return Level::g;
    if (s == "e") return Level::e;
    if (s == "e'") return Level::ep;
    if (s == "f") return Level::f;
    r.fail("unknown level \"" + s + "\"");
}

}  // namespace

ParseError::ParseError(const std::filesystem::path& file, std::size_t line, const std::string& what)
    : IoError(file.string() + ":" + std::to_string(line) + ": " + what), line_(line) {}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_signal_csv(const std::filesystem::path& path, const SignalTable& table) {
    auto out = open_out(path);
    out << "T_fs,omega,re,im\n";
    for (std::size_t k = 0; k < table.size(); ++k) {
        for (std::size_t j = 0; j < 16; ++j) {
            const cplx v = table.values[k](static_cast<Eigen::Index>(j));
            out << format_double(table.waiting_times[k]) << ',' << carrier_label(j) << ',' << format_double(v.real())
                << ',' << format_double(v.imag()) << '\n';
        }
    }
    close_out(out, path);
}

SignalTable read_signal_csv(const std::filesystem::path& path) {
    CsvReader r(path, "T_fs,omega,re,im");
    std::map<std::string, std::size_t> labels;
    for (std::size_t j = 0; j < 16; ++j) labels[carrier_label(j)] = j;
    SignalTable table;
    std::vector<std::array<bool, 16>> seen;
    std::string line;
    while (r.next(line)) {
        const auto f = split(line);
        if (f.size() != 4) r.fail("expected 4 fields");
        const double T = parse_number(f[0], path, r.line_no);
        auto it = labels.find(f[1]);
        if (it == labels.end()) r.fail("unknown carrier tuple \"" + f[1] + "\"");
        if (table.waiting_times.empty() || table.waiting_times.back() != T) {
            if (!table.waiting_times.empty() && !(T > table.waiting_times.back()))
                r.fail("waiting times must be strictly increasing");
            table.waiting_times.push_back(T);
            table.values.push_back(Vector16c::Zero());
            seen.push_back({});
        }
        if (seen.back()[it->second]) r.fail("duplicate entry for " + f[1]);
        seen.back()[it->second] = true;
        table.values.back()(static_cast<Eigen::Index>(it->second)) =
            cplx(parse_number(f[2], path, r.line_no), parse_number(f[3], path, r.line_no));
    }
    for (std::size_t k = 0; k < seen.size(); ++k) {
        for (bool b : seen[k]) {
            if (!b) throw ParseError(path, r.line_no, "incomplete carrier set at T = " + format_double(table.waiting_times[k]));
        }
    }
    if (table.waiting_times.empty()) throw ParseError(path, r.line_no, "no data rows");
    return table;
}

void write_pathway_csv(const std::filesystem::path& path, const std::vector<PathwaySignalSet>& sets) {
    auto out = open_out(path);
    out << "T_fs,p,q,r,s,re,im\n";
    for (const auto& set : sets) {
        for (std::size_t j = 0; j < 16; ++j) {
            const auto l = unpack4<Exciton>(j);
            const cplx v = set.values(static_cast<Eigen::Index>(j));
            out << format_double(set.T);
            for (auto x : l) out << ',' << name(x);
            out << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
        }
    }
    close_out(out, path);
}

void write_chi_csv(const std::filesystem::path& path, const std::vector<ProcessTensor>& chis) {
    auto out = open_out(path);
    out << "T_fs,n,m,nu,mu,re,im\n";
    auto row = [&](double T, Level n, Level m, Level nu, Level mu, cplx v) {
        out << format_double(T) << ',' << name(n) << ',' << name(m) << ',' << name(nu) << ',' << name(mu) << ','
            << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    };
    for (const auto& chi : chis) {
        for (std::size_t j = 0; j < 16; ++j) {
            const auto l = unpack4<Exciton>(j);
            row(chi.waiting_time_T, to_level(l[0]), to_level(l[1]), to_level(l[2]), to_level(l[3]), chi.elements[j]);
        }
        for (auto nu : kExcitons)
            for (auto mu : kExcitons) row(chi.waiting_time_T, Level::g, Level::g, to_level(nu), to_level(mu), chi.ground(nu, mu));
    }
    close_out(out, path);
}

std::vector<ProcessTensor> read_chi_csv(const std::filesystem::path& path) {
    CsvReader r(path, "T_fs,n,m,nu,mu,re,im");
    std::vector<ProcessTensor> out;
    std::vector<std::array<bool, 20>> seen;
    std::string line;
    while (r.next(line)) {
        const auto f = split(line);
        if (f.size() != 7) r.fail("expected 7 fields");
        const double T = parse_number(f[0], path, r.line_no);
        const Level n = parse_level(f[1], r), m = parse_level(f[2], r), nu = parse_level(f[3], r),
                    mu = parse_level(f[4], r);
        const cplx v(parse_number(f[5], path, r.line_no), parse_number(f[6], path, r.line_no));
        if (out.empty() || out.back().waiting_time_T != T) {
            if (!out.empty() && !(T > out.back().waiting_time_T)) r.fail("waiting times must be strictly increasing");
            ProcessTensor chi;
            chi.waiting_time_T = T;
            out.push_back(chi);
            seen.push_back({});
        }
        auto exciton = [](Level l) { return l == Level::e ? Exciton::e : Exciton::ep; };
        auto is_x = [](Level l) { return l == Level::e || l == Level::ep; };
        if (!is_x(nu) || !is_x(mu)) r.fail("input pair must be single-exciton");
        std::size_t slot;
        if (is_x(n) && is_x(m)) {
            slot = pack4(exciton(n), exciton(m), exciton(nu), exciton(mu));
            out.back().elements[slot] = v;
        } else if (n == Level::g && m == Level::g) {
            slot = 16 + static_cast<std::size_t>(index(exciton(nu)) * 2 + index(exciton(mu)));
            out.back().ground(exciton(nu), exciton(mu)) = v;
        } else {
            r.fail("unsupported output pair");
        }
        if (seen.back()[slot]) r.fail("duplicate element");
        seen.back()[slot] = true;
    }
    if (out.empty()) throw ParseError(path, r.line_no, "no data rows");
    for (std::size_t k = 0; k < seen.size(); ++k) {
        for (bool b : seen[k]) {
            if (!b) throw ParseError(path, r.line_no, "incomplete tensor at T = " + format_double(out[k].waiting_time_T));
        }
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
    close_out(out, path);
}

}  // namespace qptfs
