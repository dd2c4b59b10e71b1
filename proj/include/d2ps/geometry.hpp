#pragma once
// Satellite line-of-sight geometry in a local ENU frame.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace d2ps {

constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }

struct SatelliteLOS {
    int id = 0;
    double elevation_deg = 0.0;  // [0, 90]
    double azimuth_deg = 0.0;    // [0, 360)
};

struct LosVector {
    double ex = 0.0, ey = 0.0, ez = 0.0;
};

struct DiffGeomVector {
    double ex = 0.0, ey = 0.0, ez = 0.0;
};

inline void validate(const SatelliteLOS& s) {
    if (!std::isfinite(s.elevation_deg) || !std::isfinite(s.azimuth_deg))
        throw std::invalid_argument("satellite angles must be finite");
    if (s.elevation_deg < 0.0 || s.elevation_deg > 90.0)
        throw std::invalid_argument("elevation out of [0, 90]");
}

// e = [cos(el)·sin(az), cos(el)·cos(az), sin(el)]  (x East, y North, z Up)
inline LosVector los_unit_vector(const SatelliteLOS& s) {
    validate(s);
    const double el = deg2rad(s.elevation_deg);
    const double az = deg2rad(s.azimuth_deg);
    return {std::cos(el) * std::sin(az), std::cos(el) * std::cos(az), std::sin(el)};
}

inline DiffGeomVector diff_geom_vector(const SatelliteLOS& a, const SatelliteLOS& b) {
    const LosVector ea = los_unit_vector(a);
    const LosVector eb = los_unit_vector(b);
    return {ea.ex - eb.ex, ea.ey - eb.ey, ea.ez - eb.ez};
}

struct SkyView {
    std::vector<SatelliteLOS> satellites;

    std::size_t size() const { return satellites.size(); }

    // fixed satellite-pair enumeration: (i, j), i < j, list order
    std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
        std::vector<std::pair<std::size_t, std::size_t>> p;
        const std::size_t J = satellites.size();
        p.reserve(J * (J - 1) / 2);
        for (std::size_t i = 0; i < J; ++i)
            for (std::size_t j = i + 1; j < J; ++j) p.emplace_back(i, j);
        return p;
    }
};

inline SkyView validate_sky(SkyView sky) {
    if (sky.satellites.size() < 2) throw std::invalid_argument("SkyView needs J >= 2");
    for (std::size_t i = 0; i < sky.satellites.size(); ++i) {
        validate(sky.satellites[i]);
        for (std::size_t j = i + 1; j < sky.satellites.size(); ++j)
            if (sky.satellites[i].id == sky.satellites[j].id)
                throw std::invalid_argument("duplicate satellite id");
    }
    return sky;
}

struct GeometryCoefficients {
    double sum_ex2 = 0.0;  // Σ (e_x^ij)^2 over all C(J,2) pairs
    double sum_ey2 = 0.0;
    std::size_t n_pairs = 0;
};

inline GeometryCoefficients geometry_coefficients(const SkyView& sky) {
    if (sky.size() < 2) throw std::invalid_argument("geometry_coefficients needs J >= 2");
    GeometryCoefficients g;
    for (const auto& [i, j] : sky.pairs()) {
        const DiffGeomVector d = diff_geom_vector(sky.satellites[i], sky.satellites[j]);
        g.sum_ex2 += d.ex * d.ex;
        g.sum_ey2 += d.ey * d.ey;
        ++g.n_pairs;
    }
    return g;
}

// Sky-view file: one satellite per line, "id elevation_deg azimuth_deg", '#' comments.
inline SkyView load_sky(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sky file: " + path);
    SkyView sky;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        SatelliteLOS s;
        if (ss >> s.id >> s.elevation_deg >> s.azimuth_deg) sky.satellites.push_back(s);
    }
    return validate_sky(std::move(sky));
}

}  // namespace d2ps
