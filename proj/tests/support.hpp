#pragma once

#include <functional>

#include "lcong/error.hpp"

namespace lcong::test {

inline bool throws_kind(const std::function<void()>& fn, ErrorKind k) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind() == k;
    }
    return false;
}

}  // namespace lcong::test
