#include "wallforge/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"

#include "wallforge/grid.hpp"

namespace wallforge {

using nlohmann::json;

void write_solution_json(std::ostream& out, const CouplingParams& params, const SolveResult& sr) {
  const Profile& p = sr.profile;
  json j;
  j["mu"] = params.mu();
  j["eps"] = sr.eps;
  j["L"] = p.grid.half_width();
  j["n"] = p.grid.size();
  j["energy"] = sr.energy;
  j["residual"] = sr.residual;
  j["z_eps"] = sr.z_eps;
  j["crossing"] = sr.crossing;
  j["iterations"] = sr.newton_iterations;
  j["x"] = p.grid.nodes();
  j["u"] = p.u;
  j["v"] = p.v;
  out << j.dump(1) << '\n';
}

StoredSolution read_solution_json(std::istream& in) {
  try {
    const json j = json::parse(in);
    Grid grid(j.at("L").get<double>(), j.at("n").get<int>());
    auto x = j.at("x").get<std::vector<double>>();
    auto u = j.at("u").get<std::vector<double>>();
    auto v = j.at("v").get<std::vector<double>>();
    if (x.size() != static_cast<std::size_t>(grid.size())) {
      throw IoError("solution JSON: x has " + std::to_string(x.size()) + " entries, n = " +
                    std::to_string(grid.size()));
    }
    for (int i = 0; i < grid.size(); ++i) {
      if (std::abs(x[static_cast<std::size_t>(i)] - grid.x(i)) > 1e-12 * grid.half_width()) {
        throw IoError("solution JSON: x is not the uniform grid on [-L, L]");
      }
    }
    SolveResult sr{Profile(grid, std::move(u), std::move(v)),
                   j.at("eps").get<double>(),
                   j.at("energy").get<double>(),
                   j.at("residual").get<double>(),
                   j.at("iterations").get<int>(),
                   0,
                   j.at("z_eps").get<double>(),
                   j.at("crossing").get<double>(),
                   {}};
    return {j.at("mu").get<double>(), std::move(sr)};
  } catch (const json::exception& e) {
    throw IoError(std::string("solution JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("solution JSON: ") + e.what());
  }
}

StoredSolution load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path);
  }
  return read_solution_json(in);
}

void write_fits_json(std::ostream& out, const GapFit& gap, const LineFit& vprime) {
  json j;
  j["A"] = gap.A;
  j["B"] = gap.B;
  j["r2_gap"] = gap.r2;
  j["slope"] = vprime.slope;
  j["intercept"] = vprime.intercept;
  j["r2_vprime"] = vprime.r2;
  out << j.dump(1) << '\n';
}

void write_painleve_csv(std::ostream& out, const PainleveSolution& limit, const RescaledProfile& rp) {
  const MonotoneInterpolant phi0(limit.t, limit.phi);
  out << "t,phi_eps,phi_limit,abs_err\n";
  char line[128];
  for (std::size_t i = 0; i < rp.t.size(); ++i) {
    const double l = phi0(rp.t[i]);
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", rp.t[i], rp.phi[i], l, std::abs(rp.phi[i] - l));
    out << line;
  }
}

void write_painleve_csv(std::ostream& out, const PainleveSolution& limit, double lo, double hi, int count) {
  if (count < 2 || !(lo < hi)) {
    throw std::invalid_argument("write_painleve_csv: need count >= 2 and lo < hi");
  }
  const MonotoneInterpolant phi0(limit.t, limit.phi);
  out << "t,phi_limit\n";
  char line[64];
  for (int i = 0; i < count; ++i) {
    const double t = i + 1 == count ? hi : lo + (hi - lo) * i / (count - 1);
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", t, phi0(t));
    out << line;
  }
}

}  // namespace wallforge
