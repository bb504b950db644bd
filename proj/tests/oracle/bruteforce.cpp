#include "oracle/bruteforce.hpp"
