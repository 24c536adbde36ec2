// Copyright 2026 The Auralkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "auralkit/room_io.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace auralkit {

namespace {

using nlohmann::json;

Vec3 ToPoint(const json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw ParseError("expected a point [x, y, z]");
  }
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json FromPoint(const Vec3& p) { return json::array({p.x(), p.y(), p.z()}); }

Eigen::VectorXd ToVector(const json& j) {
  if (!j.is_array()) throw ParseError("expected a number list");
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

json FromVector(const Eigen::VectorXd& v) {
  json j = json::array();
  for (double x : v) j.push_back(x);
  return j;
}

BandSpectrum ToSpectrum(const json& values, const json* centers) {
  BandSpectrum s;
  s.values = ToVector(values);
  if (centers) {
    s.centers = ToVector(*centers);
  } else {
    if (s.values.size() != kNumOctaveBands) {
      throw ParseError("band values without \"centers\" must have 8 entries");
    }
    s = BandSpectrum::Octave(s.values);
  }
  return s;
}

}  // namespace

RoomModel ParseRoom(const std::string& text) {
  try {
    const json doc = json::parse(text);
    const std::string schema = doc.value("schema", "");
    if (schema != kRoomSchema) {
      throw ParseError("unsupported room schema '" + schema + "', expected '" +
                       kRoomSchema + "'");
    }
    RoomModel model;
    model.name = doc.value("name", "");
    model.speed_of_sound = doc.value("speed_of_sound", kDefaultSpeedOfSound);
    for (const json& v : doc.at("vertices")) {
      model.vertices.push_back(ToPoint(v));
    }
    for (const auto& [id, m] : doc.at("materials").items()) {
      const json* centers = m.contains("centers") ? &m.at("centers") : nullptr;
      Material material{id, ToSpectrum(m.at("absorption"), centers),
                        ToSpectrum(m.at("scattering"), centers)};
      model.materials.emplace(id, std::move(material));
    }
    for (const json& p : doc.at("polygons")) {
      Polygon polygon;
      polygon.vertex_indices = p.at("vertices").get<std::vector<int>>();
      polygon.material_id = p.at("material").get<std::string>();
      if (p.contains("tags")) {
        for (const json& t : p.at("tags")) polygon.tags.insert(t.get<std::string>());
      }
      model.polygons.push_back(std::move(polygon));
    }
    if (doc.contains("sources")) {
      for (const auto& [label, p] : doc.at("sources").items()) {
        model.sources[label] = ToPoint(p);
      }
    }
    if (doc.contains("receivers")) {
      for (const auto& [label, p] : doc.at("receivers").items()) {
        model.receivers[label] = ToPoint(p);
      }
    }
    return model;
  } catch (const json::exception& e) {
    throw ParseError(std::string("room file: ") + e.what());
  }
}

RoomModel LoadRoom(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open room file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  RoomModel model = ParseRoom(buffer.str());
  ValidateRoom(model);
  return model;
}

std::string SerializeRoom(const RoomModel& model) {
  json doc;
  doc["schema"] = kRoomSchema;
  doc["name"] = model.name;
  doc["speed_of_sound"] = model.speed_of_sound;
  json vertices = json::array();
  for (const Vec3& v : model.vertices) vertices.push_back(FromPoint(v));
  doc["vertices"] = vertices;
  json materials = json::object();
  for (const auto& [id, m] : model.materials) {
    json entry;
    entry["absorption"] = FromVector(m.absorption.values);
    entry["scattering"] = FromVector(m.scattering.values);
    entry["centers"] = FromVector(m.absorption.centers);
    materials[id] = entry;
  }
  doc["materials"] = materials;
  json polygons = json::array();
  for (const Polygon& p : model.polygons) {
    polygons.push_back({{"vertices", p.vertex_indices},
                        {"material", p.material_id},
                        {"tags", p.tags}});
  }
  doc["polygons"] = polygons;
  json sources = json::object();
  for (const auto& [label, p] : model.sources) sources[label] = FromPoint(p);
  doc["sources"] = sources;
  json receivers = json::object();
  for (const auto& [label, p] : model.receivers) receivers[label] = FromPoint(p);
  doc["receivers"] = receivers;
  if (!model.warnings.empty()) doc["warnings"] = model.warnings;
  return doc.dump(2);
}

void SaveRoom(const RoomModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write room file '" + path + "'");
  out << SerializeRoom(model) << "\n";
}

}  // namespace auralkit
