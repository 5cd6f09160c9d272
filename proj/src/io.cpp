#include "phasewave/io.hpp"

#include "phasewave/errors.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace phasewave {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::string& header) : path_(path) {
    f_ = std::fopen(path.c_str(), "wb");
    if (!f_) throw IoError("cannot open '" + path + "' for writing");
    std::fputs(header.c_str(), f_);
    std::fputc('\n', f_);
}

CsvWriter::~CsvWriter() {
    if (f_) std::fclose(f_);
}

void CsvWriter::row(const std::vector<double>& cells) {
    if (!f_) throw IoError("write to closed CSV '" + path_ + "'");
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) std::fputc(',', f_);
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", cells[k]);
        std::fputs(buf, f_);
    }
    std::fputc('\n', f_);
}

void CsvWriter::close() {
    if (f_) {
        if (std::fclose(f_) != 0) {
            f_ = nullptr;
            throw IoError("error closing '" + path_ + "'");
        }
        f_ = nullptr;
    }
}

void write_phase_space_csv(const std::string& path, const KvnWaveFunction& psi) {
    const char* header = psi.rep == Representation::QP ? "q,p,re,im" : "q,lambda_p,re,im";
    CsvWriter w(path, header);
    for (int i = 0; i < psi.grid.n_q; ++i) {
        double q = psi.grid.q_at(i);
        for (int j = 0; j < psi.grid.n_p; ++j) {
            const auto& v = psi.at(i, j);
            w.row({q, psi.grid.p_at(j), v.real(), v.imag()});
        }
    }
    w.close();
}

KvnWaveFunction read_phase_space_csv(const std::string& path,
                                     const PhaseSpaceGrid& grid,
                                     Representation rep) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw IoError("cannot open '" + path + "' for reading");

    KvnWaveFunction psi;
    psi.grid = grid;
    psi.rep = rep;
    psi.values.reserve(grid.size());

    char line[512];
    if (!std::fgets(line, sizeof(line), f)) {
        std::fclose(f);
        throw IoError("empty snapshot file '" + path + "'");
    }
    const char* expect = rep == Representation::QP ? "q,p,re,im" : "q,lambda_p,re,im";
    if (std::strncmp(line, expect, std::strlen(expect)) != 0) {
        std::fclose(f);
        throw IoError("unexpected header in '" + path + "'");
    }

    while (std::fgets(line, sizeof(line), f)) {
        if (line[0] == '\n' || line[0] == '\0') continue;
        char* cursor = line;
        double cells[4];
        for (int c = 0; c < 4; ++c) {
            char* end = nullptr;
            cells[c] = std::strtod(cursor, &end);
            if (end == cursor) {
                std::fclose(f);
                throw IoError("malformed row in '" + path + "'");
            }
            cursor = end;
            if (c < 3) {
                while (*cursor == ' ') ++cursor;
                if (*cursor != ',') {
                    std::fclose(f);
                    throw IoError("malformed row in '" + path + "'");
                }
                ++cursor;
            }
        }
        psi.values.emplace_back(cells[2], cells[3]);
    }
    std::fclose(f);

    if (psi.values.size() != grid.size())
        throw IoError("snapshot '" + path + "' has " + std::to_string(psi.values.size()) +
                      " rows, expected " + std::to_string(grid.size()));
    return psi;
}

} // namespace phasewave
