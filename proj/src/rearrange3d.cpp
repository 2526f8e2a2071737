#include "vpmin/rearrange3d.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "vpmin/errors.hpp"
#include "vpmin/io.hpp"

namespace vpmin {

namespace {

/// Integer cell coordinates doubled and centered: 2*i + 1 - n per axis.  Cell
/// centers sit at origin + (cell/2) * that integer, so center distances and
/// all pair distances square to exact integers in half-cell units.
struct CellCoords {
    std::vector<int> x, y, z;
    std::vector<long> m_center; // squared center distance, half-cell units
};

CellCoords cell_coords(const CartesianDensity& rho) {
    CellCoords c;
    const auto [nx, ny, nz] = rho.dims;
    c.x.reserve(rho.size());
    c.y.reserve(rho.size());
    c.z.reserve(rho.size());
    c.m_center.reserve(rho.size());
    for (std::size_t ix = 0; ix < nx; ++ix)
        for (std::size_t iy = 0; iy < ny; ++iy)
            for (std::size_t iz = 0; iz < nz; ++iz) {
                const int hx = static_cast<int>(2 * ix + 1) - static_cast<int>(nx);
                const int hy = static_cast<int>(2 * iy + 1) - static_cast<int>(ny);
                const int hz = static_cast<int>(2 * iz + 1) - static_cast<int>(nz);
                c.x.push_back(hx);
                c.y.push_back(hy);
                c.z.push_back(hz);
                c.m_center.push_back(static_cast<long>(hx) * hx +
                                     static_cast<long>(hy) * hy +
                                     static_cast<long>(hz) * hz);
            }
    return c;
}

void check_same_geometry(const CartesianDensity& a, const CartesianDensity& b,
                         const char* who) {
    if (a.dims != b.dims || a.cell != b.cell || a.origin != b.origin)
        throw constraint_error(std::string(who) + ": box geometries differ");
}

double kernel_at(const Kernel& k, double r) {
    const double coul = 1.0 / r;
    return k.cut > 0.0 ? std::min(coul, k.cut) : coul;
}

} // namespace

CartesianDensity make_cartesian(std::array<std::size_t, 3> dims, double cell,
                                std::array<double, 3> origin,
                                std::vector<double> values) {
    for (std::size_t n : dims) {
        if (n == 0) throw constraint_error("make_cartesian: zero dimension");
        if (n > 32) throw constraint_error("make_cartesian: axis beyond 32 cells");
    }
    if (!(cell > 0.0) || !std::isfinite(cell))
        throw constraint_error("make_cartesian: cell size must be positive");
    for (double o : origin)
        if (!std::isfinite(o))
            throw constraint_error("make_cartesian: origin must be finite");
    if (values.size() != dims[0] * dims[1] * dims[2])
        throw constraint_error("make_cartesian: value count does not match dims");
    for (double v : values)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw constraint_error("make_cartesian: values must be finite and nonnegative");
    return CartesianDensity{dims, cell, origin, std::move(values)};
}

double mass(const CartesianDensity& rho) {
    const double h3 = rho.cell * rho.cell * rho.cell;
    double sum = 0.0;
    for (double v : rho.values) sum += v;
    return h3 * sum;
}

Kernel coulomb_kernel() { return Kernel{}; }

Kernel cutoff_kernel(double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw constraint_error("cutoff_kernel: saturation must be positive");
    return Kernel{c};
}

CartesianDensity rearrange(const CartesianDensity& rho) {
    const auto coords = cell_coords(rho);
    std::vector<std::size_t> order(rho.size());
    std::iota(order.begin(), order.end(), 0);
    // Distance keys are exact integers, so the lexicographic tie-break is the
    // plain index order and the result is fully deterministic.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return coords.m_center[i] < coords.m_center[j];
    });
    std::vector<double> sorted = rho.values;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    CartesianDensity out = rho;
    for (std::size_t k = 0; k < order.size(); ++k)
        out.values[order[k]] = sorted[k];
    return out;
}

CartesianDensity translate(const CartesianDensity& rho, std::array<long, 3> shift) {
    const auto [nx, ny, nz] = rho.dims;
    CartesianDensity out = rho;
    std::fill(out.values.begin(), out.values.end(), 0.0);
    for (std::size_t ix = 0; ix < nx; ++ix)
        for (std::size_t iy = 0; iy < ny; ++iy)
            for (std::size_t iz = 0; iz < nz; ++iz) {
                const double v = rho.values[rho.flat(ix, iy, iz)];
                if (v == 0.0) continue;
                const long jx = static_cast<long>(ix) + shift[0];
                const long jy = static_cast<long>(iy) + shift[1];
                const long jz = static_cast<long>(iz) + shift[2];
                if (jx < 0 || jy < 0 || jz < 0 || jx >= static_cast<long>(nx) ||
                    jy >= static_cast<long>(ny) || jz >= static_cast<long>(nz))
                    throw constraint_error("translate: occupied cell leaves the box");
                out.values[out.flat(static_cast<std::size_t>(jx),
                                    static_cast<std::size_t>(jy),
                                    static_cast<std::size_t>(jz))] = v;
            }
    return out;
}

double interaction(const CartesianDensity& a, const CartesianDensity& b,
                   const Kernel& kernel) {
    check_same_geometry(a, b, "interaction");
    const auto coords = cell_coords(a);
    const double h = a.cell;

    // Pair offsets are whole cells, so squared pair distances in cell units
    // are integers; tabulate the kernel once per distance class.
    const std::size_t maxdim = std::max({a.dims[0], a.dims[1], a.dims[2]});
    const std::size_t mmax = 3 * (maxdim - 1) * (maxdim - 1);
    std::vector<double> kval(mmax + 1);
    kval[0] = kernel_at(kernel, 0.5 * h); // self pair regularization
    for (std::size_t m = 1; m <= mmax; ++m)
        kval[m] = kernel_at(kernel, h * std::sqrt(static_cast<double>(m)));

    const std::size_t n = a.size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ai = a.values[i];
        if (ai == 0.0) continue;
        const int xi = coords.x[i], yi = coords.y[i], zi = coords.z[i];
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const int dx = (xi - coords.x[j]) / 2;
            const int dy = (yi - coords.y[j]) / 2;
            const int dz = (zi - coords.z[j]) / 2;
            const std::size_t m = static_cast<std::size_t>(
                static_cast<long>(dx) * dx + static_cast<long>(dy) * dy +
                static_cast<long>(dz) * dz);
            row += b.values[j] * kval[m];
        }
        total += ai * row;
    }
    const double h3 = h * h * h;
    return h3 * h3 * total;
}

ConfinementTerms confinement_decomposition(const CartesianDensity& rho,
                                           double r0, double r_big) {
    if (!(r0 > 0.0)) throw constraint_error("confinement_decomposition: r0 must be positive");
    if (!(r_big > 2.0 * r0))
        throw constraint_error("confinement_decomposition: need r_big > 2*r0");

    const auto star = rearrange(rho);
    const auto coords = cell_coords(rho);
    const double h = rho.cell;
    const double h6 = h * h * h * h * h * h;
    const std::size_t n = rho.size();

    // Squared thresholds in half-cell units; pair offsets are doubled below so
    // every comparison stays on the same integer scale.
    const double quarter_h2 = 0.25 * h * h;
    const double big2 = r_big * r_big / quarter_h2;
    const double two_r0_2 = 4.0 * r0 * r0 / quarter_h2;
    const double r0_2 = r0 * r0 / quarter_h2;

    ConfinementTerms out;
    double far = 0.0, outer_coul = 0.0, outer_mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const int xi = coords.x[i], yi = coords.y[i], zi = coords.z[i];
        const bool i_out = static_cast<double>(coords.m_center[i]) >= r0_2;
        const double vi = rho.values[i];
        const double si = star.values[i];
        for (std::size_t j = 0; j < n; ++j) {
            const long dx = xi - coords.x[j];
            const long dy = yi - coords.y[j];
            const long dz = zi - coords.z[j];
            const double m = static_cast<double>(dx * dx + dy * dy + dz * dz);
            if (m >= big2) far += vi * rho.values[j];
            if (m >= two_r0_2 &&
                (i_out || static_cast<double>(coords.m_center[j]) >= r0_2)) {
                const double ss = si * star.values[j];
                outer_coul += ss / (0.5 * h * std::sqrt(m));
                outer_mass += ss;
            }
        }
    }
    out.far_pairs = (1.0 / (2.0 * r0) - 1.0 / r_big) * h6 * far;
    out.outer_coulomb = h6 * outer_coul;
    out.outer_flat = h6 * outer_mass / (2.0 * r0);
    return out;
}

RadialDensity radial_project(const CartesianDensity& rho) {
    const auto coords = cell_coords(rho);
    const double h = rho.cell;

    // Group cells by exact squared center distance (an integer in half-cell
    // units): the lattice's own shells.  Every shell is occupied by
    // construction, and a centered lattice ball projects to a sharp profile.
    std::map<long, std::pair<double, std::size_t>> shells; // m -> (sum, count)
    for (std::size_t i = 0; i < rho.size(); ++i) {
        auto& s = shells[coords.m_center[i]];
        s.first += rho.values[i];
        s.second += 1;
    }
    // The center cell of an odd box sits at distance zero; fold it into the
    // innermost positive shell (radial nodes must be strictly positive).
    if (shells.begin()->first == 0 && shells.size() > 1) {
        auto zero = shells.begin();
        auto next = std::next(zero);
        next->second.first += zero->second.first;
        next->second.second += zero->second.second;
        shells.erase(zero);
    }

    std::vector<double> nodes, values;
    for (const auto& [m, s] : shells) {
        if (m == 0) break; // single-class degenerate box handled by padding
        nodes.push_back(0.5 * h * std::sqrt(static_cast<double>(m)));
        values.push_back(s.first / static_cast<double>(s.second));
    }
    while (nodes.size() < 2) {
        nodes.push_back(nodes.empty() ? h : nodes.back() + h);
        values.push_back(nodes.size() == 1 ? rho.values.front() : 0.0);
    }

    auto out = make_density(make_grid_from_nodes(std::move(nodes), Spacing::uniform),
                            std::move(values));
    const double m_cart = mass(rho);
    const double m_rad = mass(out);
    if (m_cart > 0.0 && m_rad > 0.0) {
        const double scale = m_cart / m_rad;
        for (double& v : out.values) v *= scale;
    }
    return out;
}

std::string to_csv(const CartesianDensity& rho) {
    std::ostringstream out;
    out << "# schema_version=" << io::schema_version << "\n";
    out << "ix,iy,iz,value\n";
    for (std::size_t ix = 0; ix < rho.dims[0]; ++ix)
        for (std::size_t iy = 0; iy < rho.dims[1]; ++iy)
            for (std::size_t iz = 0; iz < rho.dims[2]; ++iz)
                out << ix << ',' << iy << ',' << iz << ','
                    << io::fmt17(rho.values[rho.flat(ix, iy, iz)]) << '\n';
    return out.str();
}

std::string to_json(const CartesianDensity& rho) {
    std::ostringstream out;
    out << "{\"schema_version\":" << io::schema_version << ",\"dims\":["
        << rho.dims[0] << ',' << rho.dims[1] << ',' << rho.dims[2]
        << "],\"cell\":" << io::fmt17(rho.cell) << ",\"origin\":["
        << io::fmt17(rho.origin[0]) << ',' << io::fmt17(rho.origin[1]) << ','
        << io::fmt17(rho.origin[2]) << "]}";
    return out.str();
}

CartesianDensity cartesian_from_csv(const std::string& header_json,
                                    const std::string& csv) {
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(header_json);
    } catch (const nlohmann::json::exception& e) {
        throw constraint_error(std::string("cartesian_from_csv: bad header: ") + e.what());
    }
    std::array<std::size_t, 3> dims{};
    std::array<double, 3> origin{};
    double cell = 0.0;
    try {
        for (int k = 0; k < 3; ++k) {
            dims[static_cast<std::size_t>(k)] = header.at("dims").at(k).get<std::size_t>();
            origin[static_cast<std::size_t>(k)] = header.at("origin").at(k).get<double>();
        }
        cell = header.at("cell").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw constraint_error(std::string("cartesian_from_csv: bad header: ") + e.what());
    }

    std::vector<double> values(dims[0] * dims[1] * dims[2], 0.0);
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("ix,", 0) == 0)
            continue;
        std::istringstream row(line);
        std::size_t ix = 0, iy = 0, iz = 0;
        double v = 0.0;
        char c1 = 0, c2 = 0, c3 = 0;
        if (!(row >> ix >> c1 >> iy >> c2 >> iz >> c3 >> v) || c1 != ',' ||
            c2 != ',' || c3 != ',')
            throw constraint_error("cartesian_from_csv: malformed row: " + line);
        if (ix >= dims[0] || iy >= dims[1] || iz >= dims[2])
            throw constraint_error("cartesian_from_csv: cell index out of range: " + line);
        values[(ix * dims[1] + iy) * dims[2] + iz] = v;
    }
    return make_cartesian(dims, cell, origin, std::move(values));
}

} // namespace vpmin
