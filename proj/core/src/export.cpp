#include "boltzmann/export.hpp"

#include <cmath>
#include <iomanip>

#include <nlohmann/json.hpp>

namespace boltzmann {
namespace {

struct PrecisionGuard {
  std::ostream& out;
  std::streamsize saved;
  explicit PrecisionGuard(std::ostream& o) : out(o), saved(o.precision(17)) {}
  ~PrecisionGuard() { out.precision(saved); }
};

}  // namespace

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record, double g_origin) {
  PrecisionGuard guard(out);
  out << "step,g,C,theta_star,r_star\n";
  for (std::size_t k = 1; k < record.steps.size(); ++k) {
    const TrajectoryStep& s = record.steps[k];
    out << k << ',' << wrap_angle(s.g, g_origin) << ',' << s.C << ',' << s.theta_star << ',' << s.r_star << '\n';
  }
}

void write_region_json(std::ostream& out, const AllowedRegion& region) {
  nlohmann::json doc;
  doc["n_g"] = region.n_g;
  doc["n_C"] = region.n_C;
  doc["C_min"] = region.C_min;
  doc["C_max"] = region.C_max;
  doc["g_origin"] = region.g_origin;
  auto& mask = doc["mask"] = nlohmann::json::array();
  for (auto m : region.mask) mask.push_back(m != 0);
  out << doc.dump() << '\n';
}

void write_spectrum_csv(std::ostream& out, const KoopmanSystem& system) {
  PrecisionGuard guard(out);
  out << "index,re_lambda,im_lambda,abs_lambda_minus_one\n";
  for (Eigen::Index i = 0; i < system.eigenvalues.size(); ++i) {
    const std::complex<double> z = system.eigenvalues[i];
    out << i << ',' << z.real() << ',' << z.imag() << ',' << std::abs(z - 1.0) << '\n';
  }
}

void write_eigenfunction_json(std::ostream& out, const KoopmanSystem& system, std::size_t index) {
  const auto levels = eigenfunction_levels(system, index);
  const std::complex<double> z = system.eigenvalues[static_cast<Eigen::Index>(index)];
  nlohmann::json doc;
  doc["n_g"] = system.partition.region.n_g;
  doc["n_C"] = system.partition.region.n_C;
  doc["index"] = index;
  doc["lambda"] = {z.real(), z.imag()};
  auto& values = doc["values"] = nlohmann::json::array();
  for (const auto& v : levels) {
    if (v) {
      values.push_back(*v);
    } else {
      values.push_back(nullptr);
    }
  }
  out << doc.dump() << '\n';
}

void write_measure_csv(std::ostream& out, const std::vector<JacobianReport>& reports) {
  PrecisionGuard guard(out);
  out << "g,C,theta_star,det,abs_det_minus_one\n";
  for (const auto& r : reports) {
    out << r.state.g << ',' << r.state.C << ',' << r.theta_star << ',' << r.det << ',' << std::abs(r.det - 1.0) << '\n';
  }
}

}  // namespace boltzmann
