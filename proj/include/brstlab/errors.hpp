#pragma once

#include <stdexcept>
#include <string>

namespace brst {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// bad configuration: order mismatch, unknown preset, malformed backend spec
class ConfigError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class InversionError : public Error {
public:
    using Error::Error;
};

class DivisionError : public Error {
public:
    using Error::Error;
};

class ClosednessError : public Error {
public:
    using Error::Error;
};

class InvarianceError : public Error {
public:
    using Error::Error;
};

} // namespace brst
