#ifndef EDPARSE_TESTS_TESTING_FIXTURES_H_
#define EDPARSE_TESTS_TESTING_FIXTURES_H_

#include <string>

#include "edparse/conllu.h"

namespace edparse::testing {

// Absolute path of a file under tests/data.
std::string DataPath(const std::string& name);

// Parses tests/data/<name>; aborts the test binary if the file is missing.
Document LoadFixture(const std::string& name);
Sentence LoadSingle(const std::string& name);

}  // namespace edparse::testing

#endif  // EDPARSE_TESTS_TESTING_FIXTURES_H_
