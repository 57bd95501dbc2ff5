#include "localchan/io.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace localchan {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      entries.push_back({m(i, j).real(), m(i, j).imag()});
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("matrix_from_json: dimensions must be positive");
  const auto& entries = j.at("entries");
  if (static_cast<Eigen::Index>(entries.size()) != rows * cols)
    throw std::invalid_argument("matrix_from_json: entry count must equal rows*cols");
  ComplexMatrix m(rows, cols);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j2 = 0; j2 < cols; ++j2, ++idx) {
      const auto& e = entries.at(static_cast<std::size_t>(idx));
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("matrix_from_json: entries must be [re, im] pairs");
      m(i, j2) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  if (!is_finite(m))
    throw std::invalid_argument("matrix_from_json: entries must be finite");
  return m;
}

json state_to_json(const DensityOperator& rho, const std::vector<int>& dims) {
  json j = matrix_to_json(rho.matrix());
  j["dims"] = dims;
  return j;
}

ImportedState state_from_json(const json& j) {
  const ComplexMatrix m = matrix_from_json(j);
  std::vector<int> dims;
  if (j.contains("dims")) {
    dims = j.at("dims").get<std::vector<int>>();
    Eigen::Index prod = 1;
    for (int d : dims) {
      if (d < 1) throw std::invalid_argument("state_from_json: dims must be positive");
      prod *= d;
    }
    if (prod != m.rows())
      throw std::invalid_argument("state_from_json: dims do not match the matrix");
  } else {
    dims.push_back(static_cast<int>(m.rows()));
  }
  return ImportedState{DensityOperator::from_matrix(m), std::move(dims)};
}

json channel_to_json(const QuantumChannel& ch) {
  json kraus = json::array();
  for (const auto& k : ch.kraus()) kraus.push_back(matrix_to_json(k));
  return json{{"dim", ch.dim()}, {"kraus", std::move(kraus)}};
}

QuantumChannel channel_from_json(const json& j) {
  const int dim = j.at("dim").get<int>();
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : j.at("kraus")) kraus.push_back(matrix_from_json(k));
  return QuantumChannel(dim, std::move(kraus));
}

json report_to_json(const BoundReport& r) {
  json j{{"state_class", state_class_name(r.state_class)},
         {"p", r.p},
         {"epsilon", r.epsilon},
         {"measured_distance", r.measured_distance},
         {"separable_bound", r.separable_bound},
         {"violates_separable", r.violates_separable},
         {"violates_entangled", r.violates_entangled}};
  if (std::isfinite(r.entangled_bound))
    j["entangled_bound"] = r.entangled_bound;
  else
    j["entangled_bound"] = nullptr;
  return j;
}

BoundReport report_from_json(const json& j) {
  BoundReport r;
  r.state_class = state_class_from_name(j.at("state_class").get<std::string>());
  r.p = j.at("p").get<double>();
  r.epsilon = j.at("epsilon").get<double>();
  r.measured_distance = j.at("measured_distance").get<double>();
  r.separable_bound = j.at("separable_bound").get<double>();
  const auto& eb = j.at("entangled_bound");
  r.entangled_bound =
      eb.is_null() ? std::numeric_limits<double>::infinity() : eb.get<double>();
  r.violates_separable = j.at("violates_separable").get<bool>();
  r.violates_entangled = j.at("violates_entangled").get<bool>();
  return r;
}

std::string report_csv_header() {
  return "trial,class,distance,sep_bound,ent_bound,violates_sep,violates_ent";
}

std::string report_csv_row(int trial, const BoundReport& r) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << trial << ',' << state_class_name(r.state_class) << ',' << r.measured_distance
     << ',' << r.separable_bound << ',';
  if (std::isfinite(r.entangled_bound))
    os << r.entangled_bound;
  else
    os << "inf";
  os << ',' << (r.violates_separable ? 1 : 0) << ',' << (r.violates_entangled ? 1 : 0);
  return os.str();
}

}  // namespace localchan
