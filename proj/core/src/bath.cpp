#include "aqc/bath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "aqc/csv_io.hpp"
#include "aqc/errors.hpp"

namespace aqc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kMaxExponent = 700.0;

double interpolate_spectrum(const TabulatedSpectrum& s, double omega) {
    const auto& v = s.samples;
    if (omega < v.front().omega || omega > v.back().omega) return 0.0;
    if (v.size() == 1) return v.front().J;
    auto it = std::upper_bound(v.begin(), v.end(), omega,
                               [](double w, const auto& x) { return w < x.omega; });
    if (it == v.end()) return v.back().J;
    const auto& b = *it;
    const auto& a = *(it - 1);
    const double w = (omega - a.omega) / (b.omega - a.omega);
    return a.J + w * (b.J - a.J);
}

}  // namespace

BathSpec BathSpec::ohmic(double eta0, double temperature) {
    BathSpec b{OhmicSpectrum{eta0}, temperature};
    b.validate();
    return b;
}

BathSpec BathSpec::power_law(double prefactor, double exponent, double cutoff,
                             double temperature) {
    BathSpec b{PowerLawSpectrum{prefactor, exponent, cutoff}, temperature};
    b.validate();
    return b;
}

BathSpec BathSpec::tabulated(std::vector<TabulatedSpectrum::Sample> samples,
                             double temperature) {
    BathSpec b{TabulatedSpectrum{std::move(samples)}, temperature};
    b.validate();
    return b;
}

BathSpec BathSpec::from_csv(std::istream& in, double temperature) {
    std::vector<TabulatedSpectrum::Sample> samples;
    for (const auto& p : io::read_xy_csv(in)) samples.push_back({p.x, p.y});
    return tabulated(std::move(samples), temperature);
}

BathSpec BathSpec::from_csv_file(const std::filesystem::path& path, double temperature) {
    std::vector<TabulatedSpectrum::Sample> samples;
    for (const auto& p : io::read_xy_csv_file(path)) samples.push_back({p.x, p.y});
    return tabulated(std::move(samples), temperature);
}

void BathSpec::validate() const {
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
        throw DomainError("bath temperature must be finite and >= 0");
    }
    std::visit(overloaded{
                   [](const OhmicSpectrum& s) {
                       if (!(s.eta0 >= 0.0) || !std::isfinite(s.eta0)) {
                           throw DomainError("ohmic friction eta0 must be >= 0");
                       }
                   },
                   [](const PowerLawSpectrum& s) {
                       if (!(s.prefactor >= 0.0) || !std::isfinite(s.prefactor) ||
                           !std::isfinite(s.exponent) || !(s.cutoff > 0.0)) {
                           throw DomainError(
                               "power-law spectrum needs prefactor >= 0, finite exponent, "
                               "cutoff > 0");
                       }
                   },
                   [](const TabulatedSpectrum& s) {
                       if (s.samples.empty()) throw DomainError("tabulated spectrum is empty");
                       for (std::size_t i = 0; i < s.samples.size(); ++i) {
                           const auto& p = s.samples[i];
                           if (!(p.omega > 0.0) || !(p.J >= 0.0) || !std::isfinite(p.J)) {
                               throw DomainError(
                                   "tabulated spectrum needs omega > 0 and J >= 0");
                           }
                           if (i > 0 && !(p.omega > s.samples[i - 1].omega)) {
                               throw DomainError(
                                   "tabulated spectrum omegas must be strictly increasing");
                           }
                       }
                   },
               },
               kind);
}

double spectral_density(const BathSpec& bath, double omega) {
    if (!(omega > 0.0)) throw DomainError("spectral density requires omega > 0");
    return std::visit(overloaded{
                          [omega](const OhmicSpectrum& s) {
                              return s.eta0 / std::numbers::pi * omega;
                          },
                          [omega](const PowerLawSpectrum& s) {
                              return omega <= s.cutoff ? s.prefactor * std::pow(omega, s.exponent)
                                                       : 0.0;
                          },
                          [omega](const TabulatedSpectrum& s) {
                              return interpolate_spectrum(s, omega);
                          },
                      },
                      bath.kind);
}

double friction(const BathSpec& bath, double delta) {
    if (!(delta > 0.0)) throw DomainError("friction requires a positive gap");
    if (const auto* ohmic = std::get_if<OhmicSpectrum>(&bath.kind)) return ohmic->eta0;
    return std::numbers::pi * spectral_density(bath, delta) / delta;
}

double relaxation_rate(const BathSpec& bath, const MassSchedule& mass,
                       const GapSchedule& schedule, double t) {
    return friction(bath, gap_at(schedule, t)) / mass.at(t);
}

double thermal_occupation(double delta, double temperature) {
    if (!(delta > 0.0)) throw DomainError("thermal occupation requires a positive gap");
    if (!(temperature >= 0.0)) throw DomainError("temperature must be >= 0");
    if (temperature == 0.0) return 0.0;
    const double x = delta / temperature;
    if (x > kMaxExponent) return 0.0;
    return 1.0 / std::expm1(x);
}

}  // namespace aqc
