#include "bisheaf/types.hpp"

namespace bisheaf {

std::string to_string(Side s) { return s == Side::Left ? "Left" : "Right"; }

std::string to_string(Level l) {
  switch (l) {
    case Level::ST: return "ST";
    case Level::MG: return "MG";
    case Level::M: return "M";
  }
  return "?";
}

std::string to_string(Nature n) {
  switch (n) {
    case Nature::T: return "T";
    case Nature::S: return "S";
    case Nature::Tp: return "Tp";
    case Nature::Sp: return "Sp";
  }
  return "?";
}

std::string to_string(ClassIndex i) {
  return "(" + std::to_string(i.mu) + "," + std::to_string(i.m) + ")";
}

Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

Level parse_level(std::string_view s) {
  if (s == "ST") return Level::ST;
  if (s == "MG") return Level::MG;
  if (s == "M") return Level::M;
  invalid_config("unknown level tag '" + std::string(s) + "'");
}

Nature parse_nature(std::string_view s) {
  if (s == "T") return Nature::T;
  if (s == "S") return Nature::S;
  if (s == "Tp") return Nature::Tp;
  if (s == "Sp") return Nature::Sp;
  invalid_config("unknown nature tag '" + std::string(s) + "'");
}

}  // namespace bisheaf
