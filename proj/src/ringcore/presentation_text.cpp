#include "flopgw/errors.hpp"
#include "flopgw/ring.hpp"

#include <sstream>
#include <stdexcept>

namespace flopgw {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

PresentationData parse_presentation(std::string_view text) {
  PresentationData data;
  bool have_top = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto sp = t.find_first_of(" \t");
    const std::string key = t.substr(0, sp);
    const std::string value = sp == std::string::npos ? std::string() : trim(std::string_view(t).substr(sp));
    auto bad = [&](const std::string& msg) {
      return InvalidPresentation("line " + std::to_string(lineno) + ": " + msg);
    };
    if (key == "name") {
      data.name = value;
    } else if (key == "generators") {
      std::istringstream gs(value);
      std::string tok;
      while (gs >> tok) {
        const auto colon = tok.rfind(':');
        if (colon == std::string::npos || colon == 0) throw bad("generator '" + tok + "' needs name:degree");
        Generator g;
        g.name = tok.substr(0, colon);
        try {
          g.degree = std::stoi(tok.substr(colon + 1));
        } catch (const std::exception&) {
          throw bad("bad degree in '" + tok + "'");
        }
        data.generators.push_back(g);
      }
    } else if (key == "relations") {
      std::size_t start = 0;
      while (start <= value.size()) {
        const auto semi = value.find(';', start);
        const std::string rel = trim(std::string_view(value).substr(start, semi - start));
        if (!rel.empty()) data.relations.push_back(rel);
        if (semi == std::string::npos) break;
        start = semi + 1;
      }
    } else if (key == "top") {
      try {
        data.top_degree = std::stoi(value);
      } catch (const std::exception&) {
        throw bad("bad top degree '" + value + "'");
      }
      have_top = true;
    } else if (key == "normalizer") {
      data.normalizer = value;
    } else {
      throw bad("unknown key '" + key + "'");
    }
  }
  if (data.generators.empty()) throw InvalidPresentation("presentation declares no generators");
  if (!have_top) throw InvalidPresentation("presentation declares no top degree");
  if (data.normalizer.empty()) throw InvalidPresentation("presentation declares no normalizer");
  return data;
}

std::string format_presentation(const PresentationData& data) {
  std::ostringstream os;
  if (!data.name.empty()) os << "name " << data.name << "\n";
  os << "generators";
  for (const auto& g : data.generators) os << " " << g.name << ":" << g.degree;
  os << "\n";
  for (const auto& r : data.relations) os << "relations " << r << "\n";
  os << "top " << data.top_degree << "\n";
  os << "normalizer " << data.normalizer << "\n";
  return os.str();
}

}  // namespace flopgw
