#include "socbloch/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "socbloch/errors.hpp"

namespace socbloch {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_csv_row(std::ostream& os, std::initializer_list<std::optional<double>> cells) {
    bool first = true;
    for (const auto& c : cells) {
        if (!first) os << ',';
        first = false;
        if (c) os << format_double(*c);
    }
    os << '\n';
}

void write_csv_header(std::ostream& os, std::initializer_list<const char*> names) {
    bool first = true;
    for (const char* n : names) {
        if (!first) os << ',';
        first = false;
        os << n;
    }
    os << '\n';
}

void write_profile_csv(std::ostream& os, const StateProfile& prof) {
    write_csv_header(os, {"x", "V", "R1sq", "R2sq", "theta1", "theta2", "re_psi1", "im_psi1", "re_psi2", "im_psi2"});
    for (Eigen::Index i = 0; i < prof.x.size(); ++i) {
        write_csv_row(os, {prof.x(i), prof.potential(i), prof.density[0](i), prof.density[1](i), prof.phase[0](i),
                           prof.phase[1](i), prof.values[0](i).real(), prof.values[0](i).imag(),
                           prof.values[1](i).real(), prof.values[1](i).imag()});
    }
}

StateProfile profile_of_field(const SpinorField& field, double V0) {
    StateProfile prof;
    prof.x = field.grid.x;
    prof.potential = lattice_potential(field.grid, V0);
    for (int j = 0; j < 2; ++j) {
        prof.values[j] = field.comp[j];
        prof.density[j] = field.comp[j].abs2();
        prof.phase[j] = unwrap_phase(field.comp[j]);
    }
    return prof;
}

SpinorField read_profile_csv(std::istream& is, const Grid& grid) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("x,V,R1sq,R2sq,theta1,theta2,re_psi1,im_psi1,re_psi2,im_psi2", 0) != 0) {
        throw Error(ErrorKind::Config, "profile CSV header does not match the expected columns");
    }
    SpinorField f{grid, {Eigen::ArrayXcd(grid.N), Eigen::ArrayXcd(grid.N)}};
    int row = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (row >= grid.N) throw Error(ErrorKind::Config, "profile CSV has more rows than grid points");
        std::istringstream ls(line);
        std::string cell;
        double v[10];
        for (int c = 0; c < 10; ++c) {
            if (!std::getline(ls, cell, ',')) throw Error(ErrorKind::Config, "short row in profile CSV");
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v[c]);
            if (res.ec != std::errc()) throw Error(ErrorKind::Config, "bad number in profile CSV: " + cell);
        }
        f.comp[0](row) = {v[6], v[7]};
        f.comp[1](row) = {v[8], v[9]};
        ++row;
    }
    if (row != grid.N) throw Error(ErrorKind::Config, "profile CSV row count does not match grid N");
    return f;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    write_csv_header(os, {"t", "norm_total", "N1", "N2", "imbalance", "energy", "dev_density", "dev_state",
                          "dev_state_phase_free"});
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& d = traj.samples[i];
        write_csv_row(os, {traj.times[i], d.norm_total, d.N1, d.N2, d.imbalance, d.energy, d.dev_density,
                           d.dev_state, d.dev_state_phase_free});
    }
}

void write_residual_csv(std::ostream& os, const ResidualReport& rep) {
    write_csv_header(os, {"component", "l2_residual", "max_residual"});
    for (int j = 0; j < 2; ++j) write_csv_row(os, {double(j + 1), rep.l2_residual[j], rep.max_residual[j]});
}

void write_rwa_sweep_csv(std::ostream& os, const std::vector<RwaSweepRow>& rows) {
    write_csv_header(os, {"omega", "xi", "epsilon_state", "epsilon_density"});
    for (const auto& r : rows) write_csv_row(os, {r.omega, r.xi, r.epsilon_state, r.epsilon_density});
}

}  // namespace socbloch
