#include "qcluster/seed_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qcluster/error.hpp"

namespace qcluster {

namespace {

using nlohmann::json;

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_from(const json& j, const char* field) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, std::string(field) + " must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
  IntMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw Error(ErrorCode::ParseError, std::string(field) + " rows have different lengths");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number_integer()) throw Error(ErrorCode::ParseError, std::string(field) + " entries must be integers");
      m(r, c) = v.get<long long>();
    }
  }
  return m;
}

bool identity_frame(const QuantumSeed& seed) {
  if (!seed.ambient() || !(*seed.ambient() == *seed.form())) return false;
  for (int i = 0; i < seed.rank(); ++i)
    if (!(seed.frame()[static_cast<std::size_t>(i)] == TorusElement::generator(seed.ambient(), i))) return false;
  return true;
}

}  // namespace

// One field per line and one matrix row per line; nlohmann's indented dump
// would put every entry on its own line.
std::string seed_to_json(const QuantumSeed& seed) {
  std::vector<std::pair<std::string, json>> fields = {{"labels", seed.labels()},
                                                      {"btilde", matrix_json(seed.btilde())},
                                                      {"lambda", matrix_json(seed.lambda())}};
  if (!identity_frame(seed)) {
    json frame = json::array();
    for (const auto& f : seed.frame()) frame.push_back(to_string(f));
    fields.emplace_back("frame", std::move(frame));
    fields.emplace_back("ambient_lambda", matrix_json(seed.ambient()->matrix()));
  }
  std::string out = "{\n";
  for (std::size_t f = 0; f < fields.size(); ++f) {
    const auto& [key, value] = fields[f];
    out += "  " + json(key).dump() + ": ";
    if (value.empty() || key == "labels") {
      out += value.dump();
    } else {
      out += "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) out += "    " + value[i].dump() + (i + 1 < value.size() ? ",\n" : "\n");
      out += "  ]";
    }
    out += f + 1 < fields.size() ? ",\n" : "\n";
  }
  return out + "}\n";
}

QuantumSeed seed_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("seed JSON: ") + e.what());
  }
  for (const char* field : {"labels", "btilde", "lambda"})
    if (!j.contains(field)) throw Error(ErrorCode::ParseError, std::string("seed JSON lacks \"") + field + "\"");
  std::vector<std::string> labels;
  for (const auto& l : j["labels"]) {
    if (!l.is_string()) throw Error(ErrorCode::ParseError, "labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  IntMatrix btilde = matrix_from(j["btilde"], "btilde");
  IntMatrix lambda = matrix_from(j["lambda"], "lambda");
  if (j.contains("frame") != j.contains("ambient_lambda"))
    throw Error(ErrorCode::ParseError, "frame and ambient_lambda must be given together");
  if (!j.contains("frame")) return QuantumSeed(std::move(labels), std::move(btilde), std::move(lambda));
  FormPtr ambient = make_form(matrix_from(j["ambient_lambda"], "ambient_lambda"));
  std::vector<TorusElement> frame;
  for (const auto& f : j["frame"]) {
    if (!f.is_string()) throw Error(ErrorCode::ParseError, "frame entries must be strings");
    frame.push_back(parse_torus(f.get<std::string>(), ambient));
  }
  return QuantumSeed(std::move(labels), std::move(btilde), std::move(lambda), std::move(frame), std::move(ambient));
}

QuantumSeed read_seed_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return seed_from_json(buf.str());
}

void write_seed_file(const std::string& path, const QuantumSeed& seed) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << seed_to_json(seed);
}

}  // namespace qcluster
