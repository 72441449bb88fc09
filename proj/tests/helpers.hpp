#pragma once

#include "swell/error.hpp"

#include <doctest.h>

#include <utility>

// Runs f, requires it to throw swell::Error, and returns the code.
template <typename F>
swell::ErrorCode error_code_of(F&& f) {
    try {
        std::forward<F>(f)();
    } catch (const swell::Error& e) {
        return e.code();
    }
    FAIL("expected swell::Error");
    return swell::ErrorCode::invalid_config;
}
