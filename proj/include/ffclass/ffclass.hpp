#pragma once

#include "ffclass/classgroup.hpp"
#include "ffclass/common.hpp"
#include "ffclass/construct.hpp"
#include "ffclass/factor.hpp"
#include "ffclass/field.hpp"
#include "ffclass/order.hpp"
#include "ffclass/poly.hpp"
#include "ffclass/report.hpp"
#include "ffclass/symbols.hpp"
#include "ffclass/zeta.hpp"
