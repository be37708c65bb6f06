#include "json_io.hpp"

#include <sstream>

namespace extensia {

Json truthJson(TruthValue v) {
  Json j;
  switch (v.sign) {
    case Sign::True:
      j["sign"] = "T";
      j["level"] = v.level;
      break;
    case Sign::False:
      j["sign"] = "F";
      j["level"] = v.level;
      break;
    case Sign::Zero:
      j["sign"] = "0";
      break;
  }
  return j;
}

std::optional<TruthValue> truthFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("sign")) return std::nullopt;
  std::string sign = j["sign"];
  if (sign == "0") return TruthValue::zero();
  if (!j.contains("level") || !j["level"].is_number_unsigned())
    return std::nullopt;
  uint32_t level = j["level"];
  if (sign == "T") return TruthValue::truth(level);
  if (sign == "F") return TruthValue::falsity(level);
  return std::nullopt;
}

namespace {

void appendJsonString(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
    } else {
      out += c;
    }
  }
  out += '"';
}

void appendTruthJson(std::string& out, TruthValue v) {
  switch (v.sign) {
    case Sign::True:
      out += "{\"sign\":\"T\",\"level\":" + std::to_string(v.level) + "}";
      break;
    case Sign::False:
      out += "{\"sign\":\"F\",\"level\":" + std::to_string(v.level) + "}";
      break;
    case Sign::Zero:
      out += "{\"sign\":\"0\"}";
      break;
  }
}

void appendInterpretation(std::string& out, const Interpretation& m,
                          bool collapsed, const std::string& indent) {
  out += "{";
  bool firstPred = true;
  for (const auto& [name, table] : m.tables()) {
    out += firstPred ? "\n" : ",\n";
    firstPred = false;
    out += indent + "  ";
    appendJsonString(out, name);
    out += ": {";
    for (uint64_t i = 0; i < table.cellCount; ++i) {
      out += i == 0 ? "\n" : ",\n";
      out += indent + "    ";
      appendJsonString(out, cellKey(m.ctx(), table, i));
      out += ": ";
      TruthValue v = (*table.cells)[i];
      if (collapsed) {
        appendJsonString(out, collapseLabel(v));
      } else {
        appendTruthJson(out, v);
      }
    }
    out += "\n" + indent + "  }";
  }
  out += "\n" + indent + "}";
}

}  // namespace

std::string interpretationJsonText(const Interpretation& m, bool collapsed) {
  std::string out;
  out.reserve(64 * m.totalCells() + 256);
  appendInterpretation(out, m, collapsed, "");
  out += "\n";
  return out;
}

std::string interpretationText(const Interpretation& m, bool collapsed) {
  std::string out;
  out.reserve(32 * m.totalCells() + 64);
  for (const auto& [name, table] : m.tables()) {
    for (uint64_t i = 0; i < table.cellCount; ++i) {
      TruthValue v = (*table.cells)[i];
      out += cellLabel(m.ctx(), name, table, i);
      out += " = ";
      out += collapsed ? collapseLabel(v) : toText(v);
      out += "\n";
    }
  }
  return out;
}

std::string solveResultJsonText(const SolveResult& r) {
  std::string out;
  out.reserve(128 * r.model.totalCells() + 512);
  out += "{\n  \"model\": ";
  appendInterpretation(out, r.model, false, "  ");
  out += ",\n  \"collapsed\": ";
  appendInterpretation(out, collapse(r.model), true, "  ");
  out += ",\n  \"stats\": {\"stages\": " + std::to_string(r.stagesUsed) +
         ", \"cells\": " + std::to_string(r.model.totalCells()) +
         ", \"kappa\": " + std::to_string(r.kappa) + "}\n}\n";
  return out;
}

namespace {

const char* threeValuedLabel(ThreeValued v) {
  switch (v) {
    case ThreeValued::True:
      return "True";
    case ThreeValued::False:
      return "False";
    case ThreeValued::Undef:
      return "Undef";
  }
  return "?";
}

}  // namespace

Json wfsJson(const std::map<std::string, ThreeValued>& wfm) {
  Json out = Json::object();
  for (const auto& [atom, v] : wfm) out[atom] = threeValuedLabel(v);
  return out;
}

std::string wfsText(const std::map<std::string, ThreeValued>& wfm) {
  std::ostringstream os;
  for (const auto& [atom, v] : wfm)
    os << atom << " = " << threeValuedLabel(v) << "\n";
  return os.str();
}

}  // namespace extensia
