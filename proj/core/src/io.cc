// Copyright 2026 The latgait Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "latgait/io.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "latgait/hash.h"

namespace latgait {
namespace {

using nlohmann::json;

json VectorJson(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd VectorFrom(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                           static_cast<Eigen::Index>(values.size()));
}

// Row-major list of rows.
json MatrixJson(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    rows.push_back(VectorJson(m.row(r).transpose()));
  }
  return rows;
}

Eigen::MatrixXd MatrixFrom(const json& j, Eigen::Index cols_if_empty = 0) {
  const auto rows = j.get<std::vector<std::vector<double>>>();
  if (rows.empty()) return Eigen::MatrixXd(0, cols_if_empty);
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.front().size()) {
      throw IoError("ragged matrix in artifact");
    }
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

json NetworkJson(const Network& net) {
  return {{"layer_sizes", net.layer_sizes()},
          {"params", VectorJson(net.params())}};
}

Network NetworkFrom(const json& j) {
  Network net(j.at("layer_sizes").get<std::vector<int>>());
  const Eigen::VectorXd params = VectorFrom(j.at("params"));
  if (params.size() != net.params().size()) {
    throw IoError("network has " + std::to_string(params.size()) +
                  " parameters, layer sizes need " +
                  std::to_string(net.params().size()));
  }
  net.params() = params;
  return net;
}

json RobotJson(const RobotModel& m) {
  json hips = json::array();
  for (const auto& h : m.hips) {
    hips.push_back({h.position.x(), h.position.y(), h.yaw});
  }
  json limits = json::array();
  for (const auto& leg : m.joint_limits) {
    for (const auto& r : leg) limits.push_back({r.min, r.max});
  }
  return {{"leg_count", m.leg_count},
          {"hips", hips},
          {"link_lengths", m.link_lengths},
          {"joint_limits", limits},
          {"nominal_height", m.nominal_height},
          {"nominal_stance_angles", VectorJson(m.nominal_stance_angles)}};
}

json ExpertsContent(const ExpertLibrary& lib) {
  json experts = json::array();
  for (const auto& e : lib.experts) {
    experts.push_back(
        {{"gait_id", e.gait_id},
         {"command", {e.command.dx, e.command.dy, e.command.dyaw}},
         {"measured_com_delta",
          {e.measured_com_delta.x, e.measured_com_delta.y,
           e.measured_com_delta.yaw}},
         {"angles", MatrixJson(e.angles)}});
  }
  return {{"format", "latgait.experts"},
          {"version", 1},
          {"seed", lib.seed},
          {"robot_hash", lib.robot_hash},
          {"config_hash", lib.config_hash},
          {"bounds",
           {{"max_step", lib.bounds.max_step},
            {"max_yaw", lib.bounds.max_yaw}}},
          {"experts", experts}};
}

json BundleContent(const PolicyBundle& b) {
  return {{"format", "latgait.policy"},
          {"version", 1},
          {"seed", b.seed},
          {"epochs", b.epochs},
          {"library_hash", b.library_hash},
          {"robot_hash", b.robot_hash},
          {"config_hash", b.config_hash},
          {"cycle_length", b.cycle_length},
          {"codes", MatrixJson(b.codes)},
          {"code_lo", VectorJson(b.code_lo)},
          {"code_hi", VectorJson(b.code_hi)},
          {"joint_lo", VectorJson(b.joint_lo)},
          {"joint_hi", VectorJson(b.joint_hi)},
          {"network", NetworkJson(b.net)}};
}

json StandardizerJson(const Standardizer& s) {
  return {{"mean", VectorJson(s.mean)}, {"std", VectorJson(s.std)}};
}

Standardizer StandardizerFrom(const json& j) {
  return {VectorFrom(j.at("mean")), VectorFrom(j.at("std"))};
}

json DynamicsContent(const DynamicsModel& m) {
  return {{"format", "latgait.dynamics"},
          {"version", 1},
          {"action_kind", std::string(ActionKindName(m.action_kind))},
          {"seed", m.seed},
          {"policy_hash", m.policy_hash},
          {"robot_hash", m.robot_hash},
          {"dataset_hash", m.dataset_hash},
          {"config_hash", m.config_hash},
          {"disabled_legs", m.disabled_legs},
          {"network", NetworkJson(m.net)},
          {"input", StandardizerJson(m.input)},
          {"output", StandardizerJson(m.output)}};
}

std::string Stamp(json content) {
  const std::string hash = HashHex(content.dump());
  content["hash"] = hash;
  return content.dump(1) + "\n";
}

// Parses a stamped document, checks its format tag and hash, and returns the
// content without the hash.
json Unstamp(const std::string& text, const char* format) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("malformed artifact: ") + e.what());
  }
  if (!j.is_object() || !j.contains("format") || j.at("format") != format) {
    throw IoError(std::string("artifact is not a ") + format + " document");
  }
  if (!j.contains("hash") || !j.at("hash").is_string()) {
    throw IoError("artifact has no content hash");
  }
  const std::string stored = j.at("hash").get<std::string>();
  j.erase("hash");
  if (HashHex(j.dump()) != stored) {
    throw IoError("artifact content does not match its hash " + stored);
  }
  return j;
}

template <typename Fn>
auto Guard(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed artifact: ") + e.what());
  }
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::string RobotHash(const RobotModel& model) {
  return HashHex(RobotJson(model).dump());
}

std::string ArtifactHash(const ExpertLibrary& library) {
  return HashHex(ExpertsContent(library).dump());
}

std::string ArtifactHash(const PolicyBundle& bundle) {
  return HashHex(BundleContent(bundle).dump());
}

std::string ArtifactHash(const DynamicsModel& model) {
  return HashHex(DynamicsContent(model).dump());
}

std::string NetworkToJson(const Network& net) {
  return NetworkJson(net).dump();
}

Network NetworkFromJson(const std::string& text) {
  return Guard([&] { return NetworkFrom(json::parse(text)); });
}

std::string ExpertsToJson(const ExpertLibrary& library) {
  return Stamp(ExpertsContent(library));
}

ExpertLibrary ExpertsFromJson(const std::string& text) {
  const json j = Unstamp(text, "latgait.experts");
  return Guard([&] {
    ExpertLibrary lib;
    lib.seed = j.at("seed").get<std::uint64_t>();
    lib.robot_hash = j.at("robot_hash").get<std::string>();
    lib.config_hash = j.at("config_hash").get<std::string>();
    lib.bounds.max_step = j.at("bounds").at("max_step").get<double>();
    lib.bounds.max_yaw = j.at("bounds").at("max_yaw").get<double>();
    for (const auto& e : j.at("experts")) {
      ExpertTrajectory t;
      t.gait_id = e.at("gait_id").get<int>();
      const auto c = e.at("command").get<std::array<double, 3>>();
      t.command = {c[0], c[1], c[2]};
      const auto d = e.at("measured_com_delta").get<std::array<double, 3>>();
      t.measured_com_delta = {d[0], d[1], d[2]};
      t.angles = MatrixFrom(e.at("angles"));
      lib.experts.push_back(std::move(t));
    }
    return lib;
  });
}

std::string BundleToJson(const PolicyBundle& bundle) {
  return Stamp(BundleContent(bundle));
}

PolicyBundle BundleFromJson(const std::string& text) {
  const json j = Unstamp(text, "latgait.policy");
  PolicyBundle b = Guard([&] {
    PolicyBundle b;
    b.seed = j.at("seed").get<std::uint64_t>();
    b.epochs = j.at("epochs").get<int>();
    b.library_hash = j.at("library_hash").get<std::string>();
    b.robot_hash = j.at("robot_hash").get<std::string>();
    b.config_hash = j.at("config_hash").get<std::string>();
    b.cycle_length = j.at("cycle_length").get<int>();
    b.codes = MatrixFrom(j.at("codes"));
    b.code_lo = VectorFrom(j.at("code_lo"));
    b.code_hi = VectorFrom(j.at("code_hi"));
    b.joint_lo = VectorFrom(j.at("joint_lo"));
    b.joint_hi = VectorFrom(j.at("joint_hi"));
    b.net = NetworkFrom(j.at("network"));
    return b;
  });
  try {
    b.Validate();
  } catch (const Error& e) {
    throw IoError(std::string("inconsistent policy file: ") + e.what());
  }
  return b;
}

std::string DynamicsToJson(const DynamicsModel& model) {
  return Stamp(DynamicsContent(model));
}

DynamicsModel DynamicsFromJson(const std::string& text) {
  const json j = Unstamp(text, "latgait.dynamics");
  DynamicsModel m = Guard([&] {
    DynamicsModel m;
    m.action_kind = ParseActionKind(j.at("action_kind").get<std::string>());
    m.seed = j.at("seed").get<std::uint64_t>();
    m.policy_hash = j.at("policy_hash").get<std::string>();
    m.robot_hash = j.at("robot_hash").get<std::string>();
    m.dataset_hash = j.at("dataset_hash").get<std::string>();
    m.config_hash = j.at("config_hash").get<std::string>();
    m.disabled_legs = j.at("disabled_legs").get<std::set<int>>();
    m.net = NetworkFrom(j.at("network"));
    m.input = StandardizerFrom(j.at("input"));
    m.output = StandardizerFrom(j.at("output"));
    return m;
  });
  try {
    m.Validate();
  } catch (const Error& e) {
    throw IoError(std::string("inconsistent dynamics file: ") + e.what());
  }
  return m;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << contents;
    if (!out) throw IoError("failed writing '" + path + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot replace '" + path + "': " + ec.message());
}

void SaveExperts(const ExpertLibrary& library, const std::string& path) {
  WriteFile(path, ExpertsToJson(library));
}
ExpertLibrary LoadExperts(const std::string& path) {
  return ExpertsFromJson(ReadFile(path));
}
void SaveBundle(const PolicyBundle& bundle, const std::string& path) {
  WriteFile(path, BundleToJson(bundle));
}
PolicyBundle LoadBundle(const std::string& path) {
  return BundleFromJson(ReadFile(path));
}
void SaveDynamics(const DynamicsModel& model, const std::string& path) {
  WriteFile(path, DynamicsToJson(model));
}
DynamicsModel LoadDynamics(const std::string& path) {
  return DynamicsFromJson(ReadFile(path));
}

std::string DatasetToCsv(const std::vector<TransitionSample>& data) {
  const Eigen::Index dim = data.empty() ? 0 : data.front().action.size();
  std::string out = "vx,vy";
  for (Eigen::Index i = 0; i < dim; ++i) out += ",a" + std::to_string(i);
  out += ",dx,dy,dyaw,vx_next,vy_next\n";
  for (const auto& s : data) {
    out += FormatDouble(s.vx) + "," + FormatDouble(s.vy);
    for (Eigen::Index i = 0; i < s.action.size(); ++i) {
      out += "," + FormatDouble(s.action[i]);
    }
    for (double v : {s.delta.dx, s.delta.dy, s.delta.dyaw, s.delta.vx_next,
                     s.delta.vy_next}) {
      out += "," + FormatDouble(v);
    }
    out += "\n";
  }
  return out;
}

std::vector<TransitionSample> DatasetFromCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("dataset is empty");
  const auto columns = std::count(line.begin(), line.end(), ',') + 1;
  if (columns < 8 || line.rfind("vx,vy,", 0) != 0) {
    throw IoError("dataset header is malformed");
  }
  const int dim = static_cast<int>(columns) - 7;
  std::vector<TransitionSample> data;
  std::vector<double> row;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    row.clear();
    const char* p = line.data();
    const char* end = p + line.size();
    while (p <= end) {
      double v = 0.0;
      const auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc()) {
        throw IoError("bad number on dataset line " + std::to_string(line_no));
      }
      row.push_back(v);
      p = next;
      if (p == end) break;
      if (*p != ',') {
        throw IoError("bad separator on dataset line " +
                      std::to_string(line_no));
      }
      ++p;
    }
    if (static_cast<long>(row.size()) != columns) {
      throw IoError("dataset line " + std::to_string(line_no) + " has " +
                    std::to_string(row.size()) + " fields, expected " +
                    std::to_string(columns));
    }
    TransitionSample s;
    s.vx = row[0];
    s.vy = row[1];
    s.action = Eigen::Map<const Eigen::VectorXd>(row.data() + 2, dim);
    const double* d = row.data() + 2 + dim;
    s.delta = {d[0], d[1], d[2], d[3], d[4]};
    data.push_back(std::move(s));
  }
  return data;
}

std::string DatasetMetaToJson(const DatasetMeta& meta) {
  const json j = {{"format", "latgait.dataset"},
                  {"action_kind", std::string(ActionKindName(meta.action_kind))},
                  {"policy_hash", meta.policy_hash},
                  {"robot_hash", meta.robot_hash},
                  {"config_hash", meta.config_hash},
                  {"dataset_hash", meta.dataset_hash},
                  {"disabled_legs", meta.disabled_legs},
                  {"seed", meta.seed},
                  {"samples", meta.samples}};
  return j.dump(1) + "\n";
}

DatasetMeta DatasetMetaFromJson(const std::string& text) {
  return Guard([&] {
    const json j = json::parse(text);
    if (j.value("format", "") != "latgait.dataset") {
      throw IoError("not a dataset metadata document");
    }
    DatasetMeta m;
    m.action_kind = ParseActionKind(j.at("action_kind").get<std::string>());
    m.policy_hash = j.at("policy_hash").get<std::string>();
    m.robot_hash = j.at("robot_hash").get<std::string>();
    m.config_hash = j.at("config_hash").get<std::string>();
    m.dataset_hash = j.at("dataset_hash").get<std::string>();
    m.disabled_legs = j.at("disabled_legs").get<std::set<int>>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.samples = j.at("samples").get<int>();
    return m;
  });
}

std::string TicksToCsv(const std::vector<StepRecord>& ticks, int joint_count) {
  std::string out = "step,x,y,yaw,vx,vy,stance";
  for (int i = 0; i < joint_count; ++i) out += ",q" + std::to_string(i);
  out += "\n";
  for (const auto& t : ticks) {
    out += std::to_string(t.step);
    for (double v : {t.com.x, t.com.y, t.com.yaw, t.com.vx, t.com.vy}) {
      out += "," + FormatDouble(v);
    }
    out += "," + std::to_string(t.stance_mask);
    for (Eigen::Index i = 0; i < t.joint_angles.size(); ++i) {
      out += "," + FormatDouble(t.joint_angles[i]);
    }
    out += "\n";
  }
  return out;
}

std::string EpisodeStepsToCsv(const EpisodeLog& log) {
  const Eigen::Index dim =
      log.steps.empty() ? 0 : log.steps.front().action.size();
  std::string out = "step,x,y,yaw,vx,vy";
  for (Eigen::Index i = 0; i < dim; ++i) out += ",a" + std::to_string(i);
  out +=
      ",pred_x,pred_y,pred_yaw,pred_vx,pred_vy,"
      "next_x,next_y,next_yaw,next_vx,next_vy,cost\n";
  auto state = [](std::string& s, const ComState& c) {
    for (double v : {c.x, c.y, c.yaw, c.vx, c.vy}) s += "," + FormatDouble(v);
  };
  for (const auto& e : log.steps) {
    out += std::to_string(e.step);
    state(out, e.state);
    for (Eigen::Index i = 0; i < e.action.size(); ++i) {
      out += "," + FormatDouble(e.action[i]);
    }
    state(out, e.predicted);
    state(out, e.realized);
    out += "," + FormatDouble(e.cost) + "\n";
  }
  return out;
}

std::string EpisodeSummaryToJson(const EpisodeLog& log,
                                 const std::string& extra_json) {
  json j = json::parse(extra_json);
  j["mean_step_cost"] = log.mean_step_cost();
  j["total_cost"] = log.total_cost;
  j["steps"] = log.steps.size();
  j["steps_to_goal"] =
      log.steps_to_goal >= 0 ? json(log.steps_to_goal) : json(nullptr);
  j["reached"] = log.reached;
  j["instability_events"] = log.instability_events;
  return j.dump(1) + "\n";
}

}  // namespace latgait
