#pragma once

#include "phasewave/wavefunction.hpp"

#include <cstdio>
#include <string>
#include <vector>

namespace phasewave {

// Minimal CSV emitter. Numbers are written with "%.17g" so doubles
// round-trip exactly and reruns are byte-identical; lines end with LF
// regardless of platform.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& header);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& cells);
    void close();
    const std::string& path() const { return path_; }

private:
    std::FILE* f_ = nullptr;
    std::string path_;
};

std::string format_double(double x);

// Phase-space snapshot, header "q,p,re,im", row-major (q varies slowest).
// The same schema serves both representations; in QLambdaP the second
// column carries lambda_p and the header says so.
void write_phase_space_csv(const std::string& path, const KvnWaveFunction& psi);

// Re-import against a known grid. Validates the header and the row count;
// node coordinates in the file are trusted. Throws IoError on trouble.
KvnWaveFunction read_phase_space_csv(const std::string& path,
                                     const PhaseSpaceGrid& grid,
                                     Representation rep = Representation::QP);

} // namespace phasewave
