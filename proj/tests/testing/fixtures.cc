#include "testing/fixtures.h"

#include <cstdio>
#include <cstdlib>

namespace edparse::testing {

std::string DataPath(const std::string& name) {
  return std::string(EDPARSE_TEST_DATA_DIR) + "/" + name;
}

Document LoadFixture(const std::string& name) {
  try {
    return ReadConlluFile(DataPath(name));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cannot load fixture %s: %s\n", name.c_str(),
                 e.what());
    std::abort();
  }
}

Sentence LoadSingle(const std::string& name) {
  Document doc = LoadFixture(name);
  if (doc.size() != 1) {
    std::fprintf(stderr, "fixture %s: expected one sentence, got %zu\n",
                 name.c_str(), doc.size());
    std::abort();
  }
  return doc.front();
}

}  // namespace edparse::testing
