#include "aqc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "aqc/errors.hpp"

namespace aqc {

GaussianState GaussianState::squeezed_vacuum(double r) {
    return {0.5 * std::exp(2.0 * r), 0.5 * std::exp(-2.0 * r), 0.0};
}

void GaussianState::validate() const {
    if (!(sigma_xx > 0.0) || !(sigma_pp > 0.0)) {
        throw DomainError("Gaussian state variances must be positive");
    }
    // Allow rounding in states constructed at the bound (vacuum, squeezed).
    if (!(determinant() >= 0.25 * (1.0 - 1e-12))) {
        throw DomainError("Gaussian state violates the uncertainty bound det(Sigma) >= 1/4");
    }
}

double gaussian_overlap(const GaussianState& s) {
    s.validate();
    const double a = s.sigma_xx + 0.5;
    const double b = s.sigma_pp + 0.5;
    return 1.0 / std::sqrt(a * b - s.sigma_xp * s.sigma_xp);
}

double mean_excitation(const GaussianState& s) {
    s.validate();
    return 0.5 * (s.sigma_xx + s.sigma_pp - 1.0);
}

std::complex<double> squeezing_moment(const GaussianState& s) {
    s.validate();
    return {0.5 * (s.sigma_xx - s.sigma_pp), s.sigma_xp};
}

std::vector<ClassicalSample> classical_trajectory(const MassSchedule& mass, const BathSpec& bath,
                                                  const GapSchedule& schedule, double x0,
                                                  double v0, const std::vector<double>& grid,
                                                  const ode::Options& options) {
    bath.validate();
    ode::Rhs rhs = [&](double t, std::span<const double> y, std::span<double> dydt) {
        const double delta = gap_at(schedule, t);
        const double damping = friction(bath, delta) / mass.at(t);
        dydt[0] = y[1];
        dydt[1] = -damping * y[1] - delta * delta * y[0];
    };
    ode::Options opts = options;
    for (double b : schedule.breakpoints()) opts.breakpoints.push_back(b);
    for (double b : mass.breakpoints()) opts.breakpoints.push_back(b);

    std::vector<ClassicalSample> out;
    out.reserve(grid.size());
    const double y0[2] = {x0, v0};
    ode::integrate(rhs, y0, grid, opts, [&](std::size_t, double t, std::span<const double> y) {
        out.push_back({t, y[0], y[1]});
    });
    return out;
}

double classical_energy(const MassSchedule& mass, const GapSchedule& schedule,
                        const ClassicalSample& s) {
    const double m = mass.at(s.t);
    return 0.5 * m * s.v * s.v + 0.5 * spring_constant(mass, schedule, s.t) * s.x * s.x;
}

FockDensity::FockDensity(std::size_t cutoff) : cutoff_(cutoff), data_(cutoff * cutoff) {
    if (cutoff < 2) throw DomainError("Fock cutoff must be at least 2");
}

FockDensity FockDensity::vacuum(std::size_t cutoff) {
    FockDensity rho(cutoff);
    rho(0, 0) = 1.0;
    return rho;
}

FockDensity FockDensity::from_real_vector(std::size_t cutoff, std::span<const double> packed) {
    FockDensity rho(cutoff);
    if (packed.size() != 2 * rho.data_.size()) {
        throw DomainError("packed density has the wrong size");
    }
    for (std::size_t i = 0; i < rho.data_.size(); ++i) {
        rho.data_[i] = {packed[2 * i], packed[2 * i + 1]};
    }
    return rho;
}

std::vector<double> FockDensity::to_real_vector() const {
    std::vector<double> packed(2 * data_.size());
    for (std::size_t i = 0; i < data_.size(); ++i) {
        packed[2 * i] = data_[i].real();
        packed[2 * i + 1] = data_[i].imag();
    }
    return packed;
}

std::complex<double> FockDensity::trace() const {
    std::complex<double> sum = 0.0;
    for (std::size_t j = 0; j < cutoff_; ++j) sum += (*this)(j, j);
    return sum;
}

double FockDensity::mean_excitation() const {
    double sum = 0.0;
    for (std::size_t j = 1; j < cutoff_; ++j) sum += static_cast<double>(j) * (*this)(j, j).real();
    return sum;
}

std::complex<double> FockDensity::squeezing_moment() const {
    std::complex<double> sum = 0.0;
    for (std::size_t j = 0; j + 2 < cutoff_; ++j) {
        sum += std::sqrt(static_cast<double>((j + 1) * (j + 2))) * (*this)(j + 2, j);
    }
    return sum;
}

double FockDensity::hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t j = 0; j < cutoff_; ++j) {
        for (std::size_t k = j; k < cutoff_; ++k) {
            worst = std::max(worst, std::abs((*this)(j, k) - std::conj((*this)(k, j))));
        }
    }
    return worst;
}

double FockDensity::min_diagonal() const {
    double m = (*this)(0, 0).real();
    for (std::size_t j = 1; j < cutoff_; ++j) m = std::min(m, (*this)(j, j).real());
    return m;
}

void lindblad_fock_evolve(const SimParams& params, std::size_t cutoff,
                          const FockObserver& observer) {
    params.validate();
    if (cutoff < 2) throw DomainError("Fock cutoff must be at least 2");
    const std::size_t dim = cutoff;

    std::vector<double> sqrt_level(dim + 1);
    for (std::size_t j = 0; j <= dim; ++j) sqrt_level[j] = std::sqrt(static_cast<double>(j));
    // Diagonal of a a† in the truncated basis: j + 1 below the top level, 0 at it.
    std::vector<double> aad(dim);
    for (std::size_t j = 0; j < dim; ++j) aad[j] = j + 1 < dim ? static_cast<double>(j + 1) : 0.0;

    ode::Rhs rhs = [&](double t, std::span<const double> y, std::span<double> dydt) {
        const double delta = params.gap(t);
        const double gamma = params.rate(t);
        const double occ = params.target(t);
        const double down = gamma * (occ + 1.0);
        const double up = gamma * occ;
        for (std::size_t j = 0; j < dim; ++j) {
            for (std::size_t k = 0; k < dim; ++k) {
                const std::size_t idx = 2 * (j * dim + k);
                const double re = y[idx];
                const double im = y[idx + 1];
                // −i Δ (j − k) ρ_jk
                const double w = delta * (static_cast<double>(j) - static_cast<double>(k));
                double dre = w * im;
                double dim_ = -w * re;
                // D[a]ρ = aρa† − ½{a†a, ρ}
                const double loss = 0.5 * (static_cast<double>(j) + static_cast<double>(k));
                dre -= down * loss * re;
                dim_ -= down * loss * im;
                if (j + 1 < dim && k + 1 < dim) {
                    const std::size_t src = 2 * ((j + 1) * dim + (k + 1));
                    const double c = down * sqrt_level[j + 1] * sqrt_level[k + 1];
                    dre += c * y[src];
                    dim_ += c * y[src + 1];
                }
                // D[a†]ρ = a†ρa − ½{a a†, ρ}
                const double gain = 0.5 * (aad[j] + aad[k]);
                dre -= up * gain * re;
                dim_ -= up * gain * im;
                if (j > 0 && k > 0) {
                    const std::size_t src = 2 * ((j - 1) * dim + (k - 1));
                    const double c = up * sqrt_level[j] * sqrt_level[k];
                    dre += c * y[src];
                    dim_ += c * y[src + 1];
                }
                dydt[idx] = dre;
                dydt[idx + 1] = dim_;
            }
        }
    };

    ode::Options opts;
    opts.rtol = params.rtol;
    opts.atol = params.atol;
    opts.norm = ode::ErrorNorm::Max;
    for (double b : params.schedule.breakpoints()) opts.breakpoints.push_back(b);
    for (double b : params.mass.breakpoints()) opts.breakpoints.push_back(b);

    std::vector<double> grid;
    const bool prepend_origin = params.output_grid.front() > 0.0;
    if (prepend_origin) grid.push_back(0.0);
    grid.insert(grid.end(), params.output_grid.begin(), params.output_grid.end());

    const auto y0 = FockDensity::vacuum(dim).to_real_vector();
    ode::integrate(rhs, y0, grid, opts, [&](std::size_t i, double t, std::span<const double> y) {
        if (prepend_origin && i == 0) return;
        auto rho = FockDensity::from_real_vector(dim, y);
        const double top = rho.top_population();
        if (top >= kCutoffPopulationLimit) {
            std::ostringstream msg;
            msg << "Fock cutoff " << dim << " is too small: top-level population " << top
                << " at t = " << t << "; retry with cutoff " << 2 * dim;
            throw CutoffError(msg.str(), dim, top);
        }
        observer(prepend_origin ? i - 1 : i, t, rho);
    });
}

std::vector<FockDensity> lindblad_fock_evolve(const SimParams& params, std::size_t cutoff) {
    std::vector<FockDensity> out;
    out.reserve(params.output_grid.size());
    lindblad_fock_evolve(params, cutoff,
                         [&](std::size_t, double, const FockDensity& rho) { out.push_back(rho); });
    return out;
}

OracleReport run_fock_oracle(const SimParams& params, const OracleOptions& options) {
    const auto reference = solve_n_stepper(params);
    std::size_t cutoff = options.initial_cutoff;
    while (true) {
        OracleReport report;
        report.cutoff_used = cutoff;
        report.min_diagonal = 1.0;
        try {
            lindblad_fock_evolve(params, cutoff,
                                 [&](std::size_t i, double, const FockDensity& rho) {
                                     const double n_ref = reference.rows[i].n;
                                     const double n = rho.mean_excitation();
                                     const double dn = std::abs(n - n_ref);
                                     report.max_abs_n_error = std::max(report.max_abs_n_error, dn);
                                     report.max_scaled_n_error = std::max(
                                         report.max_scaled_n_error, dn / std::max(1.0, n_ref));
                                     report.max_abs_pg_error =
                                         std::max(report.max_abs_pg_error,
                                                  std::abs(rho.ground_population() -
                                                           1.0 / (1.0 + n_ref)));
                                     report.max_abs_squeezing = std::max(
                                         report.max_abs_squeezing, std::abs(rho.squeezing_moment()));
                                     report.max_trace_error = std::max(
                                         report.max_trace_error, std::abs(rho.trace() - 1.0));
                                     report.max_hermiticity_error = std::max(
                                         report.max_hermiticity_error, rho.hermiticity_defect());
                                     report.min_diagonal =
                                         std::min(report.min_diagonal, rho.min_diagonal());
                                     report.max_top_population =
                                         std::max(report.max_top_population, rho.top_population());
                                     report.max_n = std::max(report.max_n, n_ref);
                                 });
            return report;
        } catch (const CutoffError&) {
            if (!options.auto_cutoff || 2 * cutoff > options.max_cutoff) throw;
            cutoff *= 2;
        }
    }
}

std::string oracle_report_json(const OracleReport& r, const SimParams& params) {
    nlohmann::json j;
    j["params"] = nlohmann::json::parse(describe_params_json(params));
    j["max_abs_n_error"] = r.max_abs_n_error;
    j["max_scaled_n_error"] = r.max_scaled_n_error;
    j["max_abs_pg_error"] = r.max_abs_pg_error;
    j["max_abs_squeezing"] = r.max_abs_squeezing;
    j["max_trace_error"] = r.max_trace_error;
    j["max_hermiticity_error"] = r.max_hermiticity_error;
    j["min_diagonal"] = r.min_diagonal;
    j["max_top_population"] = r.max_top_population;
    j["max_n"] = r.max_n;
    j["cutoff_used"] = r.cutoff_used;
    return j.dump(2);
}

}  // namespace aqc
