#pragma once

#include "ppnear/embedding.hpp"
#include "ppnear/error.hpp"
#include "ppnear/group.hpp"
#include "ppnear/io.hpp"
#include "ppnear/mealy.hpp"
#include "ppnear/oracle.hpp"
#include "ppnear/radical.hpp"
