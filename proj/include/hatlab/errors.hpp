#pragma once

#include <stdexcept>
#include <string>

namespace hatlab {

/// Requested instance is outside the supported enumeration budget.
class UnsupportedSize : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class MalformedStrategy : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

class MalformedPartition : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace hatlab
