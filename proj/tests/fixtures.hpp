#pragma once

#include <string>

#ifndef EBLOCH_TEST_DATA
#error "EBLOCH_TEST_DATA must point at tests/data"
#endif

inline std::string data_path(const std::string& name) {
  return std::string(EBLOCH_TEST_DATA) + "/" + name;
}
