/* chmod -- change permission modes of files */

#include <config.h>
#include <stdio.h>
#include <sys/types.h>
#include <sys/stat.h>
#include <fcntl.h>

#include "system.h"
#include "modechange.h"

static struct mode_change *change;
static mode_t umask_value;
static int recurse;
static int verbosity;

/* Change the mode of FILE relative to the directory DIRFD.
   Return true if successful. */
static bool
process_file (int dirfd, char const *file, struct stat const *file_stats)
{
  mode_t old_mode = file_stats->st_mode;
  mode_t new_mode;
  bool ok = true;

  new_mode = mode_adjust (old_mode, S_ISDIR (old_mode) != 0, umask_value,
                          change, NULL);

  if (fchmodat (dirfd, file, new_mode, 0) != 0)
    {
      error (0, errno, "changing permissions of %s", quote (file));
      ok = false;
    }

  if (verbosity != 0)
    describe_change (file, old_mode, new_mode, ok);
  return ok;
}

/* Walk the operands and apply the mode to each. */
static bool
process_files (char **files, int dirfd)
{
  bool ok = true;
  struct stat st;

  for (; *files; files++)
    {
      if (fstatat (dirfd, *files, &st, 0) != 0)
        {
          error (0, errno, "cannot access %s", quote (*files));
          ok = false;
          continue;
        }
      ok &= process_file (dirfd, *files, &st);
    }
  return ok;
}

int
main (int argc, char **argv)
{
  char *mode = argv[1];

  change = mode_compile (mode);
  if (!change)
    error (EXIT_FAILURE, 0, "invalid mode: %s", quote (mode));
  umask_value = umask (0);
  return process_files (argv + 2, AT_FDCWD) ? EXIT_SUCCESS : EXIT_FAILURE;
}
