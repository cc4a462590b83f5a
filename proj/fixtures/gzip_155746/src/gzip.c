/* gzip (GNU zip) -- compress files with zip algorithm and 'compress' interface */

#include <config.h>
#include <stdio.h>
#include <sys/types.h>
#include <sys/stat.h>
#include <fcntl.h>
#include <unistd.h>

#include "tailor.h"
#include "gzip.h"

static struct stat istat;        /* status for input file */
static int ifd;                  /* input file descriptor */
static int ofd;                  /* output file descriptor */
static char ifname[MAX_PATH_LEN];  /* input file name */
static char ofname[MAX_PATH_LEN];  /* output file name */
static int to_stdout;
static int decompress;
static int level = 6;

static int create_outfile (void);
static void copy_stat (struct stat *ifstat);

/* Compress or decompress the file named IFNAME into OFNAME. */
static void
treat_file (char *iname)
{
  if (stat (iname, &istat) != 0)
    {
      progerror (iname);
      return;
    }
  strcpy (ifname, iname);

  ifd = open (ifname, O_RDONLY | O_BINARY);
  if (ifd == -1)
    {
      progerror (ifname);
      return;
    }

  if (make_ofname () != OK || create_outfile () != OK)
    {
      close (ifd);
      return;
    }

  if (decompress)
    unzip (ifd, ofd);
  else
    zip (ifd, ofd);

  close (ifd);
  if (close (ofd))
    write_error ();

  /* Give the output the permissions and owner of the input. */
  copy_stat (&istat);
}

/* Create the output file with restrictive permissions. */
static int
create_outfile (void)
{
  int flags = O_WRONLY | O_CREAT | O_EXCL | O_BINARY;

  ofd = open (ofname, flags, S_IRUSR | S_IWUSR);
  if (ofd == -1)
    {
      progerror (ofname);
      close (ifd);
      return ERROR;
    }
  return OK;
}

/* Copy modes, times and ownership from the input to the output file,
   then remove the input file. */
static void
copy_stat (struct stat *ifstat)
{
  struct timespec timestamps[2];

  timestamps[0] = get_stat_atime (ifstat);
  timestamps[1] = get_stat_mtime (ifstat);
  if (utimensat (AT_FDCWD, ofname, timestamps, 0) != 0)
    WARN ((stderr, "%s: cannot set the time stamp of %s\n", progname, ofname));

  if (chown (ofname, ifstat->st_uid, ifstat->st_gid) != 0)
    WARN ((stderr, "%s: cannot set the owner of %s\n", progname, ofname));

  if (chmod (ofname, ifstat->st_mode & 07777) != 0)
    WARN ((stderr, "%s: cannot set the permissions of %s\n", progname, ofname));

  remove_ofname_on_error = 0;
  if (unlink (ifname) != 0)
    WARN ((stderr, "%s: cannot remove %s\n", progname, ifname));
}

int
main (int argc, char **argv)
{
  int optc;

  while ((optc = getopt (argc, argv, "cd123456789")) != -1)
    {
      if (optc == 'c')
        to_stdout = 1;
      else if (optc == 'd')
        decompress = 1;
      else if (optc >= '1' && optc <= '9')
        level = optc - '0';
    }
  for (; optind < argc; optind++)
    treat_file (argv[optind]);
  return exit_code;
}
