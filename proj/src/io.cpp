#include "latgauss/io.hpp"

#include <cmath>
#include <fstream>

namespace latgauss {

namespace {

// Integral doubles serialize as exact JSON integers.
Json number_to_json(double v) {
  const double r = std::nearbyint(v);
  if (v == r && std::abs(v) < 9.0e15) {
    return Json(static_cast<std::int64_t>(r));
  }
  return Json(v);
}

}  // namespace

Json int_vec_to_json(const IntVec& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

IntVec int_vec_from_json(const Json& j) {
  IntVec v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& entry : j) v(i++) = entry.get<std::int64_t>();
  return v;
}

Json vec_to_json(const Vec& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(number_to_json(v(i)));
  return arr;
}

Vec vec_from_json(const Json& j) {
  Vec v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& entry : j) v(i++) = entry.get<double>();
  return v;
}

Json basis_to_json(const Basis& basis) {
  Json j;
  j["m"] = basis.ambient_dim();
  j["n"] = basis.rank();
  Json cols = Json::array();
  for (int c = 0; c < basis.rank(); ++c) {
    Json col = Json::array();
    for (int r = 0; r < basis.ambient_dim(); ++r) {
      col.push_back(number_to_json(basis.columns(r, c)));
    }
    cols.push_back(std::move(col));
  }
  j["columns"] = std::move(cols);
  return j;
}

Basis basis_from_json(const Json& j) {
  const int m = j.at("m").get<int>();
  const int n = j.at("n").get<int>();
  const auto& cols = j.at("columns");
  if (static_cast<int>(cols.size()) != n) {
    throw ValidationError("basis json: column count mismatch");
  }
  Mat B(m, n);
  for (int c = 0; c < n; ++c) {
    const auto& col = cols[static_cast<std::size_t>(c)];
    if (static_cast<int>(col.size()) != m) {
      throw ValidationError("basis json: column length mismatch");
    }
    for (int r = 0; r < m; ++r) {
      B(r, c) = col[static_cast<std::size_t>(r)].get<double>();
    }
  }
  return Basis{std::move(B)};
}

Json support_to_json(const TruncatedSupport& support) {
  Json j;
  j["radius"] = support.radius;
  j["delta_r"] = support.delta_r;
  j["q_xr"] = support.q_xr;
  j["p_r"] = support.p_r;
  if (support.alpha_r.has_value()) {
    j["alpha_r"] = *support.alpha_r;
  } else {
    j["alpha_r"] = nullptr;
  }
  Json pts = Json::array();
  for (std::size_t i = 0; i < support.size(); ++i) {
    Json row;
    row["x"] = int_vec_to_json(support.points[i]);
    row["q"] = support.q_mass[i];
    row["q_r"] = support.q_r[i];
    row["pi_r"] = support.pi_r[i];
    row["accept"] = support.accept[i];
    pts.push_back(std::move(row));
  }
  j["points"] = std::move(pts);
  return j;
}

TruncatedSupport support_from_json(const Json& j) {
  TruncatedSupport sup;
  sup.radius = j.at("radius").get<double>();
  sup.delta_r = j.at("delta_r").get<double>();
  sup.q_xr = j.at("q_xr").get<double>();
  sup.p_r = j.at("p_r").get<double>();
  if (!j.at("alpha_r").is_null()) {
    sup.alpha_r = j.at("alpha_r").get<double>();
  }
  for (const auto& row : j.at("points")) {
    sup.points.push_back(int_vec_from_json(row.at("x")));
    sup.q_mass.push_back(row.at("q").get<double>());
    sup.q_r.push_back(row.at("q_r").get<double>());
    sup.pi_r.push_back(row.at("pi_r").get<double>());
    sup.accept.push_back(row.at("accept").get<double>());
  }
  return sup;
}

Json query_stats_to_json(const QueryStats& stats) {
  Json j;
  j["oracle_calls"] = stats.oracle_calls;
  j["rotation_calls"] = stats.rotation_calls;
  j["iterations"] = stats.iterations;
  j["attempts"] = stats.attempts;
  j["total_oracle_calls"] = stats.attempts * stats.oracle_calls;
  j["success_prob"] = stats.success_prob;
  return j;
}

Json lwe_instance_to_json(const LweInstance& instance) {
  Json j;
  j["m"] = instance.A.rows();
  j["n"] = instance.A.cols();
  j["q"] = instance.q;
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < instance.A.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < instance.A.cols(); ++c) {
      row.push_back(instance.A(r, c));
    }
    rows.push_back(std::move(row));
  }
  j["A"] = std::move(rows);
  j["b"] = int_vec_to_json(instance.b);
  j["s"] = int_vec_to_json(instance.s);
  j["e"] = int_vec_to_json(instance.e);
  return j;
}

Basis load_basis_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open basis file: " + path);
  }
  Json j;
  in >> j;
  return basis_from_json(j);
}

}  // namespace latgauss
